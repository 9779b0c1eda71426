use std::process::Command;

use eistwist::eisenstein::DEFAULT_N_MAX;
use eistwist::harness::cache::{file_name, load_context, save_context};
use eistwist::harness::{
    sweep_even, sweep_even_on, sweep_odd_on, LevelData, SweepOptions, CSV_HEADER,
};
use eistwist::modsym::Sign;
use eistwist::selmer::{equivalence_predicate, selmer_rank, RankKind, SelmerInput};

fn grid() -> impl Iterator<Item = SelmerInput> {
    let mut out = Vec::new();
    for p_divides_h in [false, true] {
        for pic_zn_trivial in [false, true] {
            for log1_u in 0..5 {
                for log1_pi2 in 0..5 {
                    for g_p in [1, 2] {
                        out.push(SelmerInput {
                            p_divides_h,
                            pic_zn_trivial,
                            log1_u,
                            log1_pi2,
                            g_p,
                        });
                    }
                }
            }
        }
    }
    out.into_iter()
}

#[test]
fn selmer_grid() {
    let mut errors = 0;
    for input in grid() {
        match equivalence_predicate(&input) {
            Ok((rank_gt_1, criterion)) => {
                assert_eq!(rank_gt_1, criterion, "{input:?}");
                let r = selmer_rank(&input).unwrap();
                assert!(r.value >= 1);
                assert_eq!(
                    r.kind == RankKind::LowerBound,
                    input.p_divides_h || !input.pic_zn_trivial
                );
            }
            Err(_) => {
                assert!(!input.p_divides_h && !input.pic_zn_trivial);
                errors += 1;
            }
        }
    }
    assert_eq!(errors, 50);
}

#[test]
fn parallel_and_serial_sweeps_agree() {
    let level = LevelData::build(31, 5, Sign::Plus, DEFAULT_N_MAX).unwrap();
    let serial = sweep_even_on(&level, 1, 1500, Some(1)).unwrap();
    for jobs in [Some(2), Some(4), None] {
        assert_eq!(sweep_even_on(&level, 1, 1500, jobs).unwrap(), serial);
    }
    let minus = LevelData::build(31, 5, Sign::Minus, DEFAULT_N_MAX).unwrap();
    let serial = sweep_odd_on(&minus, -1500, -1, Some(1)).unwrap();
    assert_eq!(sweep_odd_on(&minus, -1500, -1, Some(3)).unwrap(), serial);
}

#[test]
fn csv_is_deterministic() {
    let opts = SweepOptions::default();
    let a = sweep_even(11, 5, 1, 800, &opts).unwrap().to_csv();
    let b = sweep_even(11, 5, 1, 800, &opts).unwrap().to_csv();
    assert_eq!(a, b);
    assert_eq!(a.lines().next().unwrap(), CSV_HEADER);
    let ds: Vec<i64> = a
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(ds.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn cached_context_reproduces_rows() {
    let dir = tempfile::tempdir().unwrap();
    let opts = SweepOptions {
        cache_dir: Some(dir.path()),
        ..SweepOptions::default()
    };
    let fresh = sweep_even(31, 5, 1, 600, &SweepOptions::default()).unwrap();
    let first = sweep_even(31, 5, 1, 600, &opts).unwrap();
    let path = dir.path().join(file_name(31, 5, Sign::Plus, DEFAULT_N_MAX));
    assert!(path.exists());
    let bytes = std::fs::read(&path).unwrap();
    let second = sweep_even(31, 5, 1, 600, &opts).unwrap();
    assert_eq!(fresh, first);
    assert_eq!(fresh, second);

    // saving a loaded context gives a byte-identical file
    let level = LevelData::build(31, 5, Sign::Plus, DEFAULT_N_MAX).unwrap();
    let loaded = load_context(&path, &level.space).unwrap();
    let again = dir.path().join("again.json");
    save_context(&again, &level.space, &loaded).unwrap();
    assert_eq!(std::fs::read(&again).unwrap(), bytes);
}

#[test]
fn json_report_shape() {
    let rep = sweep_even(11, 5, 1, 100, &SweepOptions::default()).unwrap();
    let v = rep.to_json();
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["summary"]["total"], 9);
    assert_eq!(v["summary"]["failed"], 0);
    let row = &v["rows"][0];
    for key in CSV_HEADER.split(',').chain(["branch"]) {
        assert!(row.get(key).is_some(), "missing {key}");
    }
    assert_eq!(row["D"], 12);
    assert_eq!(row["eis_valuation"], "1");
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_eistwist"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn command_line() {
    let (code, out, _) = cli(&[
        "sweep-even",
        "--N",
        "11",
        "--p",
        "5",
        "--dmin",
        "1",
        "--dmax",
        "100",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out.lines().nth(1).unwrap(),
        "11,5,12,1,1,3,3,false,1,1,exact,true"
    );
    let (code, out, _) = cli(&[
        "sweep-odd",
        "--N",
        "11",
        "--p",
        "5",
        "--dmin",
        "-50",
        "--dmax",
        "-1",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    let (code, _, err) = cli(&[
        "sweep-even",
        "--N",
        "13",
        "--p",
        "5",
        "--dmin",
        "1",
        "--dmax",
        "10",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("hypothesis"));

    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "theta",
        "--N",
        "11",
        "--p",
        "5",
        "--D",
        "12",
        "--cache-dir",
        d,
    ];
    assert_eq!(cli(&args).0, 0);
    let path = dir.path().join(file_name(11, 5, Sign::Plus, DEFAULT_N_MAX));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(
        &path,
        text.replacen("\"format_version\": 1", "\"format_version\": 0", 1),
    )
    .unwrap();
    assert_eq!(cli(&args).0, 4);
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["checksum"] = "0".repeat(64).into();
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, _, err) = cli(&args);
    assert_eq!(code, 3);
    assert!(err.contains("cache integrity"));
}
