use std::process::Command;

use absorbing::cli::{classify_text, parse_spec, run, EXIT_CAP, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
use absorbing::theorem_suite::{mine, Family, Flag, Query};
use serde_json::Value;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_absorbing")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn spec_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("absorbing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn mined_witnesses_reclassify_byte_for_byte() {
    let families = [
        Family::ZnUpTo(40),
        Family::Corpus("small-finite".into(), 0),
    ];
    let queries = [
        Query::parse(&["2ap-primary=+", "1ap=-"]).unwrap(),
        Query::parse(&["1ap=+", "prime=-"]).unwrap(),
        Query::parse(&["proper=+", "2-absorbing=-"]).unwrap(),
    ];
    let mut checked = 0;
    for f in &families {
        for q in &queries {
            for hit in mine(q, f, 3000).unwrap() {
                let doc = classify_text(&hit.spec, Some("N")).unwrap();
                assert_eq!(doc["report"].to_string(), hit.report.to_string(), "{}", hit.spec);
                let flags: &Value = &doc["report"];
                let read = |fl: Flag| {
                    let key = match fl {
                        Flag::Proper => "proper",
                        Flag::Prime => "prime",
                        Flag::Primary => "primary",
                        Flag::TwoAbsorbing => "two_absorbing",
                        Flag::TwoAbsorbingPrimary => "two_absorbing_primary",
                        Flag::OneAbsorbingPrimary => "one_absorbing_primary",
                    };
                    flags[key].as_bool().unwrap()
                };
                assert!(q.must_hold.iter().all(|&f| read(f)));
                assert!(q.must_fail.iter().all(|&f| !read(f)));
                checked += 1;
            }
        }
    }
    assert!(checked > 50, "only {checked} hits");
}

#[test]
fn mining_examples() {
    let q = Query::parse(&["2ap-primary=+", "1ap=-"]).unwrap();
    let hits = mine(&q, &Family::ZnUpTo(100), usize::MAX).unwrap();
    // zero ideals of Z/6, Z/10, then Z/12
    let firsts: Vec<(&str, &str)> = hits
        .iter()
        .take(4)
        .map(|h| (h.spec.lines().nth(1).unwrap(), h.submodule.as_str()))
        .collect();
    assert_eq!(
        firsts,
        [("ring zn 6", "<>"), ("ring zn 10", "<>"), ("ring zn 12", "<>"), ("ring zn 12", "<6>")]
    );
    let q = Query::parse(&["1ap=+", "primary=-"]).unwrap();
    let (code, out, _) = bin(&["mine", "1ap=+", "primary=-", "--family", "small-finite"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), mine(&q, &Family::Corpus("small-finite".into(), 0), usize::MAX).unwrap().len());
}

#[test]
fn classify_examples() {
    let whole = classify_text("ring zn 12\nmodule regular\nsub N = [1]\n", None).unwrap();
    assert_eq!(whole["report"]["proper"], false);
    let lat = classify_text("ring Z\nmodule intlattice 2\nsub N = [(4,0)]\n", None).unwrap();
    assert_eq!(lat["report"]["one_absorbing_primary"], false);
    assert_eq!(lat["report"]["colon"], "0Z");
    assert_eq!(lat["report"]["m_radical"], "<(2,0)> in Z^2");
    assert_eq!(lat["report"]["witnesses"]["one_absorbing_primary"].to_string(), "[2,2,[1,0]]");
    let ideal = classify_text("ring zn 12\nmodule regular\nideal I = [4]\n", None).unwrap();
    assert_eq!(ideal["kind"], "ideal");
    assert_eq!(ideal["report"]["primary"], true);
}

#[test]
fn binary_exit_codes() {
    let good = spec_file("good.spec", "version 1\nring Z\nmodule regular\nsub N = [12]\n");
    let (code, out, _) = bin(&["classify", "--spec", &good]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["report"]["m_radical"], "6Z");

    let (code, _, err) = bin(&["classify", "--spec", &good, "--target", "K"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("K"));

    let bad = spec_file("bad.spec", "ring zn -1\nmodule regular\n");
    let (code, _, err) = bin(&["classify", "--spec", &bad]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 1, column 9"), "{err}");

    let big = spec_file("big.spec", "ring zn 1000\nmodule regular\nsub N = [0]\n");
    assert_eq!(bin(&["classify", "--spec", &big]).0, EXIT_CAP);
    let huge = spec_file("huge.spec", "ring Z\nmodule intlattice 2\nsub N = [(4294967296,0)]\n");
    assert_eq!(bin(&["classify", "--spec", &huge]).0, EXIT_CAP);

    assert_eq!(bin(&["verify", "bogus-id"]).0, EXIT_USAGE);
    assert_eq!(bin(&["verify", "--corpus", "nowhere"]).0, EXIT_USAGE);
    assert_eq!(bin(&["mine", "bogus=+"]).0, EXIT_USAGE);
    // a law whose instances the corpus does not supply
    assert_eq!(bin(&["verify", "L-TC", "--corpus", "zn-60"]).0, EXIT_USAGE);
}

#[test]
fn verify_reports_and_status() {
    let (code, out, _) = bin(&["verify", "L-T0b", "--corpus", "zn-60"]);
    assert_eq!(code, EXIT_OK);
    let r: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(r["status"], "pass");
    assert_eq!(r["violations"].as_array().unwrap().len(), 0);
    assert!(r["non_vacuous_count"].as_u64().unwrap() > 100);
    assert!(r.get("runtime_ms").is_none());

    let (code, out, _) = bin(&["verify", "all", "--corpus", "small-finite"]);
    let reports: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(reports.len() >= 17);
    assert!(reports.iter().all(|r| r["violations"].as_array().unwrap().is_empty()));
    // the efficient-covering laws only hold vacuously, which must surface
    let vacuous: Vec<&str> = reports.iter().filter(|r| r["status"] == "vacuous").map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(vacuous, ["L-EF", "L-EF-RING"]);
    assert_eq!(code, EXIT_VIOLATION);

    let (_, out, _) = bin(&["verify", "L-CHAIN", "--timings"]);
    assert!(out.contains("runtime_ms"));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["absorbing", "verify", "all", "--corpus", "small-finite", "--seed", "11"];
    let a = run(args);
    let b = run(args);
    assert_eq!(a, b);
    let mut parallel = args.to_vec();
    parallel.extend(["--workers", "4"]);
    assert_eq!(run(parallel).stdout, a.stdout);
    let z = ["absorbing", "verify", "all", "--corpus", "z-world", "--seed", "3"];
    assert_eq!(run(z), run(z));
    let budgeted = run(["absorbing", "verify", "L-CHAIN", "--budget", "5"]);
    let r: Value = serde_json::from_str(budgeted.stdout.trim()).unwrap();
    assert_eq!(r["instances_checked"], 5);
    assert_eq!(r["budget_exhausted"], true);
}

#[test]
fn table_formats() {
    let t = run(["absorbing", "verify", "L-NEG", "--corpus", "z-world", "--format", "table"]);
    assert!(t.stdout.starts_with("L-NEG"), "{}", t.stdout);
    let m = run(["absorbing", "mine", "prime=+", "--family", "zn:12", "--format", "table"]);
    assert_eq!(m.stdout.lines().count(), 2);
}

#[test]
fn every_reproducer_parses() {
    for text in [
        "version 1\nring product(zn 4, zn 2)\nmodule product(regular, regular)\nsub N = [(2,0)]\n",
        "ring Z\nmodule group 2 4\nsub N = [(1,2)]\n",
        "ring zn 12\nmodule localize(regular, [1, 3, 9])\n",
        "ring zn 8\nmodule quotient(regular, [4])  # Z/4 as a Z/8-module\nsub N = [2]\n",
    ] {
        let spec = parse_spec(text).unwrap();
        spec.build().unwrap();
    }
}
