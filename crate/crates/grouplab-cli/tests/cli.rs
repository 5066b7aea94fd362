//! End-to-end tests that spawn the `grouplab` binary.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use grouplab::catalog::{fixture_a4, load_group, save_catalog};
use grouplab::Bounds;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_grouplab"));
    c.env_remove("GROUPLAB_CATALOG");
    c
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawn grouplab");
    assert!(
        out.status.success(),
        "grouplab {args:?} failed: {}\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grouplab-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

#[test]
fn a4_example_round_trips_through_the_binary() {
    let text = run_ok(&["check", "A4", "nc-supp", "--h", "(1,2)(3,4)"]);
    assert!(text.contains("nc-supp: yes"), "{text}");
    assert!(text.contains("HK normal: true"), "{text}");

    let text = run_ok(&["check", "A4", "c-supp", "--h", "(1,2)(3,4)"]);
    assert!(text.contains("c-supp: no (exhaustive(10))"), "{text}");

    let v: serde_json::Value = serde_json::from_str(&run_ok(&[
        "check", "A4", "c-supp", "--h", "(1,2)(3,4)", "--format", "json",
    ]))
    .expect("json output");
    assert_eq!(v["result"]["answer"], "no");
    assert_eq!(v["result"]["tag"], "exhaustive(10)");
    assert_eq!(v["group"]["order"], "12");
}

#[test]
fn construct_writes_a_loadable_group_file() {
    let dir = scratch_dir("construct");
    let path = dir.join("r4.group");
    let text = run_ok(&[
        "construct",
        "fixture:remark4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(text.contains("degree 361"), "{text}");
    assert!(text.contains("order 1805"), "{text}");

    let entry = load_group(&path, &Bounds::default()).expect("reload group file");
    assert_eq!(entry.group.order_u64(), Some(1805));
    assert_eq!(entry.group.degree(), 361);

    let path = dir.join("l27.group");
    let text = run_ok(&["construct", "PSL2(7)", "--out", path.to_str().unwrap()]);
    assert!(text.contains("degree 8"), "{text}");
    assert!(text.contains("order 168"), "{text}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn spec_grammar_covers_products_and_semidirects() {
    let dir = scratch_dir("grammar");
    for (spec, order) in [
        ("S4", "24"),
        ("C12", "12"),
        ("D8", "8"),
        ("EA(3,2)", "9"),
        ("prod(C2,C3)", "6"),
        ("wr(C2,3)", "24"),
        ("sd(3,1,[2])", "6"),
    ] {
        let path = dir.join("g.group");
        let text = run_ok(&["construct", spec, "--out", path.to_str().unwrap()]);
        assert!(text.contains(&format!("order {order}")), "{spec}: {text}");
    }
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn check_predicates_answer_on_small_groups() {
    let text = run_ok(&["check", "S4", "solvable"]);
    assert!(text.contains("solvable: true"), "{text}");

    let text = run_ok(&["check", "PSL2(7)", "simple"]);
    assert!(text.contains("simple: true"), "{text}");

    let text = run_ok(&["check", "S3", "p-nilpotent", "--p", "2"]);
    assert!(text.contains("2-nilpotent: true"), "{text}");
    let text = run_ok(&["check", "S3", "p-nilpotent", "--p", "3"]);
    assert!(text.contains("3-nilpotent: false"), "{text}");

    let text = run_ok(&["check", "S4", "sylow", "--p", "2"]);
    assert!(text.contains("order 8"), "{text}");

    let text = run_ok(&["check", "S4", "hall", "--pi", "2,3"]);
    assert!(text.contains("order 24"), "{text}");

    let text = run_ok(&["check", "A4", "core", "--h", "(1,2)(3,4)"]);
    assert!(text.contains("core order 1"), "{text}");
    let text = run_ok(&["check", "A4", "core", "--h", "(1,2)(3,4)", "--h", "(1,3)(2,4)"]);
    assert!(text.contains("core order 4"), "{text}");

    let text = run_ok(&["check", "PSL2(7)", "sections", "--model", "A4"]);
    assert!(text.contains("section matching A4 (order 12): yes"), "{text}");
    let text = run_ok(&["check", "C12", "sections", "--model", "A4"]);
    assert!(text.contains("section matching A4 (order 12): no"), "{text}");

    let v: serde_json::Value =
        serde_json::from_str(&run_ok(&["check", "S3", "spectrum", "--format", "json"]))
            .expect("json");
    assert_eq!(v["result"]["spectrum"]["1"], 1);
    assert_eq!(v["result"]["spectrum"]["2"], 3);
    assert_eq!(v["result"]["spectrum"]["3"], 2);
}

#[test]
fn suite_on_the_empty_catalog_is_clean() {
    let out = bin()
        .args(["suite", "T2", "--catalog", "empty", "--format", "json"])
        .output()
        .expect("spawn");
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).expect("json");
    assert_eq!(v["checks"].as_array().unwrap().len(), 0);
    assert_eq!(v["summary"]["violations"], 0);
}

#[test]
fn suite_reads_catalog_from_flag_and_environment() {
    let dir = scratch_dir("catalog");
    let entry = fixture_a4(&Bounds::default()).expect("fixture");
    save_catalog(&dir, &[entry]).expect("save catalog");

    let out = bin()
        .args(["suite", "EX_A4", "--catalog", dir.to_str().unwrap(), "--format", "json"])
        .output()
        .expect("spawn");
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).expect("json");
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["id"], "EX_A4");
    assert_eq!(checks[0]["verdict"], "consistent");

    let out = Command::new(env!("CARGO_BIN_EXE_grouplab"))
        .env("GROUPLAB_CATALOG", dir.to_str().unwrap())
        .args(["suite", "EX_A4", "--format", "json"])
        .output()
        .expect("spawn");
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).expect("json");
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn repeated_suite_runs_are_byte_identical() {
    let dir = scratch_dir("determinism");
    let entry = fixture_a4(&Bounds::default()).expect("fixture");
    save_catalog(&dir, &[entry]).expect("save catalog");
    let args = ["suite", "all", "--catalog", dir.to_str().unwrap(), "--format", "json"];
    let first = run_ok(&args);
    let second = run_ok(&args);
    assert_eq!(first, second);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn usage_errors_exit_with_code_three() {
    let out = bin().args(["check", "A4", "bogus"]).output().expect("spawn");
    assert_eq!(exit_code(&out), 3);
    let out = bin().args(["construct", "Z99"]).output().expect("spawn");
    assert_eq!(exit_code(&out), 3);
    let out = bin()
        .args(["construct", "fixture:nope"])
        .output()
        .expect("spawn");
    assert_eq!(exit_code(&out), 3);
    let out = bin()
        .args(["check", "A4", "sylow"]) // missing --p
        .output()
        .expect("spawn");
    assert_eq!(exit_code(&out), 3);
    let out = bin().args(["--help"]).output().expect("spawn");
    assert_eq!(exit_code(&out), 0);
    let out = bin().args(["--version"]).output().expect("spawn");
    assert_eq!(exit_code(&out), 0);
}

// -------------------------------------------------------------------
// Independent oracle for `mine` on A4: raw image-vector arithmetic,
// no library calls.
// -------------------------------------------------------------------

type Img = Vec<usize>;

fn compose(a: &Img, b: &Img) -> Img {
    // a then b, matching the library's left-to-right convention.
    a.iter().map(|&i| b[i]).collect()
}

fn inverse(a: &Img) -> Img {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn closure(gens: &[Img], degree: usize) -> BTreeSet<Img> {
    let id: Img = (0..degree).collect();
    let mut seen: BTreeSet<Img> = BTreeSet::new();
    seen.insert(id);
    let mut frontier: Vec<Img> = seen.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// Parse "(1,2)(3,4)" into an image vector on `degree` points (1-based text).
fn parse_cycles_raw(degree: usize, text: &str) -> Img {
    let mut img: Img = (0..degree).collect();
    let inner = text.trim();
    if inner == "()" {
        return img;
    }
    for cyc in inner.split(')').filter(|c| !c.trim().is_empty()) {
        let pts: Vec<usize> = cyc
            .trim_start_matches('(')
            .split(',')
            .map(|t| t.trim().parse::<usize>().expect("point") - 1)
            .collect();
        for w in 0..pts.len() {
            img[pts[w]] = pts[(w + 1) % pts.len()];
        }
    }
    img
}

#[test]
fn mine_on_a4_matches_a_brute_force_oracle() {
    // Brute-force A4 from scratch.
    let degree = 4;
    let g1 = parse_cycles_raw(degree, "(1,2,3)");
    let g2 = parse_cycles_raw(degree, "(1,2)(3,4)");
    let elements: Vec<Img> = closure(&[g1, g2], degree).into_iter().collect();
    assert_eq!(elements.len(), 12);

    // All subgroups, by closing every subset seed of at most two elements.
    // A4's subgroups are all at most 2-generated, so this is complete.
    let mut subgroups: BTreeSet<Vec<Img>> = BTreeSet::new();
    for a in &elements {
        for b in &elements {
            let set = closure(&[a.clone(), b.clone()], degree);
            subgroups.insert(set.into_iter().collect());
        }
    }
    assert_eq!(subgroups.len(), 10);
    let subgroups: Vec<Vec<Img>> = subgroups.into_iter().collect();
    let whole: BTreeSet<Img> = elements.iter().cloned().collect();

    let core_of = |h: &[Img]| -> BTreeSet<Img> {
        h.iter()
            .filter(|x| {
                elements.iter().all(|g| {
                    let conj = compose(&compose(&inverse(g), x), g);
                    h.contains(&conj)
                })
            })
            .cloned()
            .collect()
    };
    let product_set = |h: &[Img], k: &[Img]| -> BTreeSet<Img> {
        let mut out = BTreeSet::new();
        for a in h {
            for b in k {
                out.insert(compose(a, b));
            }
        }
        out
    };
    let is_subgroup = |s: &BTreeSet<Img>| -> bool {
        s.iter()
            .all(|a| s.iter().all(|b| s.contains(&compose(a, b))))
    };
    let is_normal = |s: &BTreeSet<Img>| -> bool {
        elements.iter().all(|g| {
            s.iter()
                .all(|x| s.contains(&compose(&compose(&inverse(g), x), g)))
        })
    };

    // nc: some K with HK a normal subgroup and H∩K inside the core of H.
    // c: some K with HK = G and H∩K inside the core of H.
    let mut expected: BTreeSet<Vec<Img>> = BTreeSet::new();
    for h in &subgroups {
        let core = core_of(h);
        let hset: BTreeSet<Img> = h.iter().cloned().collect();
        let mut nc = false;
        let mut c = false;
        for k in &subgroups {
            let kset: BTreeSet<Img> = k.iter().cloned().collect();
            let meet: BTreeSet<Img> = hset.intersection(&kset).cloned().collect();
            if !meet.is_subset(&core) {
                continue;
            }
            let prod = product_set(h, k);
            if prod == whole {
                c = true;
            }
            if is_subgroup(&prod) && is_normal(&prod) {
                nc = true;
            }
        }
        if nc && !c {
            expected.insert(h.clone());
        }
    }
    // A4: exactly the three subgroups generated by a double transposition.
    assert_eq!(expected.len(), 3);
    assert!(expected.iter().all(|h| h.len() == 2));

    // Now ask the binary.
    let dir = scratch_dir("mine");
    let entry = fixture_a4(&Bounds::default()).expect("fixture");
    save_catalog(&dir, &[entry]).expect("save catalog");
    let stdout = run_ok(&["mine", "--catalog", dir.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("json");
    let findings = v["findings"].as_array().unwrap();

    let mut reported: BTreeSet<Vec<Img>> = BTreeSet::new();
    for f in findings {
        assert_eq!(f["group"], "A4");
        assert_eq!(f["nc"], "witness");
        assert_eq!(f["c"], "exhaustive(10)");
        let gens: Vec<Img> = f["h_gens"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| parse_cycles_raw(degree, s.as_str().unwrap()))
            .collect();
        let set = closure(&gens, degree);
        reported.insert(set.into_iter().collect());
    }
    assert_eq!(reported, expected);

    // Determinism of the miner itself.
    let again = run_ok(&["mine", "--catalog", dir.to_str().unwrap(), "--format", "json"]);
    assert_eq!(stdout, again);
    let _ = std::fs::remove_dir_all(&dir);
}
