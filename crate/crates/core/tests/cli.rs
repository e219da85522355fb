use std::fs;
use std::path::Path;
use std::process::Command;

use seedhawk::graph::planted_partition;
use seedhawk::harness::{read_records, RECORD_HEADER};

fn seedhawk(args: &[&str], cwd: &Path) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_seedhawk"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "seedhawk {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write_graph(dir: &Path) {
    let g = planted_partition(3, 20, 0.4, 0.02, 3);
    g.write_edge_list(fs::File::create(dir.join("pp.txt")).unwrap())
        .unwrap();
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    write_graph(dir.path());
    fs::write(
        dir.path().join("run.cfg"),
        "graph=pp.txt\nmethods=dhho,degree,pr\nfractions=0.05,0.1\nruns=30\npop=6\niters=5\nseed=3\nout=from_file\n",
    )
    .unwrap();
    seedhawk(
        &[
            "fis-sweep",
            "--config",
            "run.cfg",
            "--fractions",
            "0.05,0.1,0.15",
            "--out",
            "from_flag",
        ],
        dir.path(),
    );
    assert!(!dir.path().join("from_file").exists());
    let text = fs::read_to_string(dir.path().join("from_flag/fis_sweep.csv")).unwrap();
    assert!(text.starts_with(&RECORD_HEADER.join(",")));
    let records = read_records(text.as_bytes()).unwrap();
    assert_eq!(records.len(), 3 * 3);
    assert!(records.iter().all(|r| r.seed == 3 && r.p == 0.1));

    let report = seedhawk(
        &["compare", "--input", "from_flag/fis_sweep.csv", "--out", "cmp"],
        dir.path(),
    );
    assert!(report.contains("Friedman chi2"));
    let csv = fs::read_to_string(dir.path().join("cmp/compare_report.csv")).unwrap();
    assert!(csv.starts_with("section,name,value,z,p_value,adjusted_p"));
    assert_eq!(csv.lines().filter(|l| l.starts_with("holm,")).count(), 2);
}

#[test]
fn sweeps_round_trip_through_compare() {
    let dir = tempfile::tempdir().unwrap();
    write_graph(dir.path());
    let common = [
        "--graph",
        "pp.txt",
        "--methods",
        "degree,hi,enc",
        "--pop",
        "4",
        "--iters",
        "3",
        "--runs",
        "10",
    ];
    for (cmd, file) in [
        ("lie-sweep", "lie_sweep.csv"),
        ("prob-sweep", "prob_sweep.csv"),
        ("timing", "timing.csv"),
    ] {
        let mut args = vec![cmd];
        args.extend(common);
        args.extend(["--out", "out"]);
        if cmd != "prob-sweep" {
            args.extend(["--fractions", "0.05,0.1"]);
        } else {
            args.extend(["--p", "0.05,0.1,0.2"]);
        }
        seedhawk(&args, dir.path());
        let input = format!("out/{file}");
        seedhawk(&["compare", "--input", &input, "--out", "cmp"], dir.path());
    }
    let prob = read_records(fs::read(dir.path().join("out/prob_sweep.csv")).unwrap().as_slice()).unwrap();
    assert_eq!(prob.len(), 3 * 3);
    assert!(prob.iter().all(|r| r.fraction == 0.10 && r.k == 6));
}

#[test]
fn communities_and_matrix_compare() {
    let dir = tempfile::tempdir().unwrap();
    write_graph(dir.path());
    let out = seedhawk(&["communities", "--graph", "pp.txt", "--out", "c"], dir.path());
    assert!(out.contains("communities = 3"), "{out}");
    let csv = fs::read_to_string(dir.path().join("c/pp_communities.csv")).unwrap();
    assert_eq!(csv.lines().count(), 61);

    fs::write(
        dir.path().join("m.csv"),
        "problem,a,b,c\np1,3,2,1\np2,3,2,1\np3,3,2,1\n",
    )
    .unwrap();
    let out = seedhawk(&["compare", "--input", "m.csv", "--out", "c"], dir.path());
    assert!(out.contains("Friedman chi2 = 6.0000"), "{out}");
}

#[test]
fn bad_flags_fail_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_seedhawk"))
        .args(["fis-sweep", "--graph", "missing.txt", "--p", "1.5"])
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("probability"));
}
