//! Sublattices of `Z^k` in row Hermite normal form.
//!
//! Basis vectors are rows. The basis is in echelon form with positive pivots
//! and entries above each pivot reduced into `[0, pivot)`, which makes it a
//! canonical form: two generating sets span the same subgroup exactly when
//! their normal forms coincide.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 4;
pub const ENTRY_BOUND: i128 = 1 << 31;

pub type Vector = Vec<i128>;

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntLattice {
    ambient_rank: usize,
    basis: Vec<Vector>,
}

fn ck(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow)
}

/// `row_i -= q * row_j` with overflow checks.
fn row_sub(m: &mut [Vector], i: usize, j: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for c in 0..m[i].len() {
        let t = ck(m[j][c].checked_mul(q))?;
        m[i][c] = ck(m[i][c].checked_sub(t))?;
    }
    Ok(())
}

/// Row Hermite normal form of an arbitrary integer matrix; zero rows dropped.
pub(crate) fn hermite(mut m: Vec<Vector>, width: usize) -> Result<Vec<Vector>> {
    let mut r = 0;
    for col in 0..width {
        if r == m.len() {
            break;
        }
        loop {
            let pivot = (r..m.len())
                .filter(|&i| m[i][col] != 0)
                .min_by_key(|&i| m[i][col].abs());
            let Some(p) = pivot else { break };
            m.swap(r, p);
            let mut clean = true;
            for i in r + 1..m.len() {
                if m[i][col] != 0 {
                    let q = m[i][col] / m[r][col];
                    row_sub(&mut m, i, r, q)?;
                    if m[i][col] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if m[r][col] == 0 {
            continue;
        }
        if m[r][col] < 0 {
            for c in 0..width {
                m[r][c] = -m[r][c];
            }
        }
        let p = m[r][col];
        for i in 0..r {
            let q = m[i][col].div_euclid(p);
            row_sub(&mut m, i, r, q)?;
        }
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|&x| x != 0));
    Ok(m)
}

/// Basis of `{x ∈ Z^rows : x·A = 0}`.
pub(crate) fn left_kernel(a: &[Vector], cols: usize) -> Result<Vec<Vector>> {
    let rows = a.len();
    let aug: Vec<Vector> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..rows).map(|j| i128::from(i == j)));
            v
        })
        .collect();
    let h = hermite(aug, cols + rows)?;
    Ok(h.into_iter()
        .filter(|row| row[..cols].iter().all(|&x| x == 0))
        .map(|row| row[cols..].to_vec())
        .collect())
}

fn transpose(a: &[Vector], cols: usize) -> Vec<Vector> {
    (0..cols).map(|c| a.iter().map(|row| row[c]).collect()).collect()
}

impl IntLattice {
    /// Lattice spanned by the generators, with entries bounded by 2^31.
    pub fn new(generators: &[Vector], ambient_rank: usize) -> Result<Self> {
        if !(1..=MAX_RANK).contains(&ambient_rank) {
            return Err(Error::RankOutOfRange(ambient_rank));
        }
        for g in generators {
            if g.len() != ambient_rank {
                return Err(Error::DimensionMismatch {
                    expected: ambient_rank,
                    found: g.len(),
                });
            }
            if let Some(&x) = g.iter().find(|x| x.abs() > ENTRY_BOUND) {
                return Err(Error::EntryTooLarge(x));
            }
        }
        Self::from_rows(generators.to_vec(), ambient_rank)
    }

    fn from_rows(rows: Vec<Vector>, k: usize) -> Result<Self> {
        Ok(IntLattice {
            ambient_rank: k,
            basis: hermite(rows, k)?,
        })
    }

    pub fn zero(k: usize) -> Result<Self> {
        Self::new(&[], k)
    }

    pub fn full(k: usize) -> Result<Self> {
        Self::scaled(1, k)
    }

    /// `d·Z^k`.
    pub fn scaled(d: i128, k: usize) -> Result<Self> {
        let rows = (0..k)
            .map(|i| (0..k).map(|j| if i == j { d } else { 0 }).collect())
            .collect();
        Self::from_rows(rows, k)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }
    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_rank && self.basis.iter().enumerate().all(|(i, r)| r[i] == 1)
    }

    fn pivot(row: &[i128]) -> usize {
        row.iter().position(|&x| x != 0).expect("basis rows are nonzero")
    }

    fn check_same(&self, other: &IntLattice) -> Result<()> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: other.ambient_rank,
            });
        }
        Ok(())
    }

    /// Exact membership by back-substitution along the pivots.
    pub fn contains(&self, v: &[i128]) -> bool {
        if v.len() != self.ambient_rank {
            return false;
        }
        let mut v = v.to_vec();
        for row in &self.basis {
            let p = Self::pivot(row);
            if v[p] % row[p] != 0 {
                return false;
            }
            let q = v[p] / row[p];
            for c in 0..v.len() {
                match row[c].checked_mul(q).and_then(|t| v[c].checked_sub(t)) {
                    Some(x) => v[c] = x,
                    None => return false,
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn is_subset(&self, other: &IntLattice) -> bool {
        self.ambient_rank == other.ambient_rank && self.basis.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &IntLattice) -> Result<IntLattice> {
        self.check_same(other)?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::from_rows(rows, self.ambient_rank)
    }

    /// Intersection through the lattice spanned by `(b, b)` and `(c, 0)`:
    /// its vectors with vanishing first half carry `L1 ∩ L2` in the second.
    pub fn intersection(&self, other: &IntLattice) -> Result<IntLattice> {
        self.check_same(other)?;
        let k = self.ambient_rank;
        let mut rows: Vec<Vector> = self
            .basis
            .iter()
            .map(|b| b.iter().chain(b.iter()).copied().collect())
            .collect();
        rows.extend(other.basis.iter().map(|c| {
            let mut v = c.clone();
            v.extend(std::iter::repeat_n(0, k));
            v
        }));
        let h = hermite(rows, 2 * k)?;
        let inter = h
            .into_iter()
            .filter(|row| row[..k].iter().all(|&x| x == 0))
            .map(|row| row[k..].to_vec())
            .collect();
        Self::from_rows(inter, k)
    }

    /// `{m : tm ∈ N for some nonzero integer t}`, computed as the integer
    /// orthogonal complement of the integer kernel of the basis.
    pub fn saturation(&self) -> Result<IntLattice> {
        let k = self.ambient_rank;
        let kernel = left_kernel(&transpose(&self.basis, k), self.rank())?;
        let sat = left_kernel(&transpose(&kernel, k), kernel.len())?;
        Self::from_rows(sat, k)
    }

    pub fn is_saturated(&self) -> Result<bool> {
        Ok(self.saturation()? == *self)
    }

    /// Coordinates of `v` against the basis over the rationals, if `v` lies
    /// in the rational span.
    pub fn rational_coords(&self, v: &[i128]) -> Result<Option<Vec<Ratio<i128>>>> {
        let mut coords: Vec<Ratio<i128>> = Vec::with_capacity(self.rank());
        for (i, row) in self.basis.iter().enumerate() {
            let p = Self::pivot(row);
            let mut acc = Ratio::from_integer(v[p]);
            for (l, prev) in self.basis[..i].iter().enumerate() {
                acc = ck_ratio(acc.checked_sub(&ck_ratio(coords[l].checked_mul(&Ratio::from_integer(prev[p])))?))?;
            }
            coords.push(ck_ratio(acc.checked_div(&Ratio::from_integer(row[p])))?);
        }
        for c in 0..self.ambient_rank {
            let mut s = Ratio::from_integer(0);
            for (x, row) in coords.iter().zip(&self.basis) {
                s = ck_ratio(s.checked_add(&ck_ratio(x.checked_mul(&Ratio::from_integer(row[c])))?))?;
            }
            if s != Ratio::from_integer(v[c]) {
                return Ok(None);
            }
        }
        Ok(Some(coords))
    }

    /// Least `t > 0` with `tv ∈ N`, or `None` when no multiple lies in `N`.
    pub fn order_of(&self, v: &[i128]) -> Result<Option<i128>> {
        Ok(self
            .rational_coords(v)?
            .map(|coords| coords.iter().fold(1i128, |acc, c| acc.lcm(c.denom()))))
    }

    /// Exponent of the finite group `saturation(N)/N`; 1 when torsion-free.
    pub fn torsion_exponent(&self) -> Result<i128> {
        let sat = self.saturation()?;
        let mut e = 1i128;
        for row in sat.basis() {
            let t = self.order_of(row)?.expect("saturation lies in the rational span");
            e = e.lcm(&t);
        }
        Ok(e)
    }

    /// `d·N`.
    pub fn scale(&self, d: i128) -> Result<IntLattice> {
        let rows = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| ck(x.checked_mul(d))).collect::<Result<Vector>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows, self.ambient_rank)
    }

    /// `(N :_M d) = {m : dm ∈ N}`.
    pub fn colon_scalar(&self, d: i128) -> Result<IntLattice> {
        let k = self.ambient_rank;
        if d == 0 {
            return Self::full(k);
        }
        let d = d.abs();
        let inter = self.intersection(&Self::scaled(d, k)?)?;
        let rows = inter.basis.iter().map(|r| r.iter().map(|&x| x / d).collect()).collect();
        Self::from_rows(rows, k)
    }

    /// Representatives of `saturation(N)/N`, one per coset, in lexicographic
    /// order of their coordinates against the saturation basis.
    pub fn torsion_cosets(&self, cap: usize) -> Result<Vec<Vector>> {
        let sat = self.saturation()?;
        let r = sat.rank();
        let mut coords = Vec::with_capacity(r);
        for row in &self.basis {
            let c = sat.rational_coords(row)?.expect("N lies in its saturation");
            coords.push(c.iter().map(|x| x.to_integer()).collect::<Vector>());
        }
        let h = hermite(coords, r)?;
        let bounds: Vec<i128> = (0..r).map(|i| h[i][i]).collect();
        let count = bounds.iter().try_fold(1i128, |acc, &b| acc.checked_mul(b)).ok_or(Error::Overflow)?;
        if count > cap as i128 {
            return Err(Error::CapExceeded {
                what: "torsion coset enumeration",
                limit: cap,
            });
        }
        let mut reps = Vec::with_capacity(count as usize);
        let mut x = vec![0i128; r];
        loop {
            let mut v = vec![0i128; self.ambient_rank];
            for (xi, row) in x.iter().zip(sat.basis()) {
                for c in 0..v.len() {
                    v[c] += xi * row[c];
                }
            }
            reps.push(v);
            // odometer, last coordinate fastest
            let mut i = r;
            loop {
                if i == 0 {
                    return Ok(reps);
                }
                i -= 1;
                x[i] += 1;
                if x[i] < bounds[i] {
                    break;
                }
                x[i] = 0;
            }
        }
    }
}

fn ck_ratio(v: Option<Ratio<i128>>) -> Result<Ratio<i128>> {
    v.ok_or(Error::Overflow)
}

pub fn render_vector(v: &[i128]) -> String {
    if v.len() == 1 {
        return v[0].to_string();
    }
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ambient_rank == 1 {
            return match self.basis.first() {
                None => write!(f, "0Z"),
                Some(r) if r[0] == 1 => write!(f, "Z"),
                Some(r) => write!(f, "{}Z", r[0]),
            };
        }
        let rows: Vec<String> = self.basis.iter().map(|r| render_vector(r)).collect();
        write!(f, "<{}> in Z^{}", rows.join(", "), self.ambient_rank)
    }
}

impl fmt::Debug for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(gens: &[&[i128]], k: usize) -> IntLattice {
        IntLattice::new(&gens.iter().map(|g| g.to_vec()).collect::<Vec<_>>(), k).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(lat(&[&[4, 0]], 2).basis(), &[vec![4, 0]]);
        assert_eq!(lat(&[], 2).rank(), 0);
        // (1,1),(2,0),(0,3): det of (1,1),(2,0) is -2, with (0,3) gcd(2,3)=1
        let l = lat(&[&[2, 0], &[0, 3], &[1, 1]], 2);
        assert!(l.is_full());
        assert_eq!(l.basis(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(lat(&[&[-2, 4], &[1, 1]], 2), lat(&[&[1, 1], &[0, 6]], 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(IntLattice::new(&[], 5).unwrap_err(), Error::RankOutOfRange(5));
        assert!(matches!(IntLattice::new(&[vec![1]], 2), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(IntLattice::new(&[vec![1i128 << 40]], 1), Err(Error::EntryTooLarge(_))));
    }

    #[test]
    fn operations() {
        let n = lat(&[&[4, 0]], 2);
        assert_eq!(n.saturation().unwrap(), lat(&[&[1, 0]], 2));
        assert!(!n.contains(&[2, 0]));
        assert!(n.contains(&[-8, 0]));
        let a = lat(&[&[2, 0], &[0, 1]], 2);
        let b = lat(&[&[1, 0], &[0, 3]], 2);
        assert_eq!(a.intersection(&b).unwrap(), lat(&[&[2, 0], &[0, 3]], 2));
        assert_eq!(a.sum(&b).unwrap(), IntLattice::full(2).unwrap());
        assert_eq!(n.torsion_exponent().unwrap(), 4);
        assert_eq!(n.colon_scalar(2).unwrap(), lat(&[&[2, 0]], 2));
        assert_eq!(n.torsion_cosets(100).unwrap().len(), 4);
        let skew = lat(&[&[2, 2]], 2);
        assert_eq!(skew.saturation().unwrap(), lat(&[&[1, 1]], 2));
    }
}
