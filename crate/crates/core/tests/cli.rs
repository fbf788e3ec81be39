use std::process::{Command, Output};

use mbf::cli::IdentRecord;

fn mbf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbf"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_and_count() {
    let o = mbf(&["generate", "--n", "3"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 20);
    assert_eq!(
        (lines[0].as_str(), lines[19].as_str()),
        ("00000000", "11111111")
    );

    let o = mbf(&[
        "generate", "--n", "3", "--from", "x37", "--limit", "2", "--format", "hex",
    ]);
    assert_eq!(stdout(&o), "x3f\nx55\n");

    assert_eq!(stdout(&mbf(&["count", "--n", "5"])), "M_5 = 7581\n");
}

#[test]
fn identify_prints_a_parseable_record() {
    let o = mbf(&["identify", "--n", "3", "--fun", "00110111"]);
    assert!(o.status.success());
    let rec: IdentRecord = stdout(&o).trim().parse().unwrap();
    assert_eq!(
        rec,
        IdentRecord {
            n: 3,
            min_t: vec![2, 5],
            max_f: vec![1, 4],
            q: 5
        }
    );
    assert_eq!(
        stdout(&mbf(&["identify", "--n", "3", "--minT", "5,2"])),
        stdout(&o)
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| mbf(args).status.code().unwrap();
    assert_eq!(code(&["identify", "--n", "3", "--fun", "0011"]), 2);
    assert_eq!(code(&["identify", "--n", "3", "--fun", "0011011z"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["identify", "--n", "3", "--fun", "01100111"]), 3);
    assert_eq!(code(&["identify", "--n", "3", "--minT", "2,3"]), 3);
    assert_eq!(code(&["count", "--n", "7"]), 4);
    assert_eq!(code(&["generate", "--n", "7"]), 4);
    assert_eq!(code(&["matrix", "--n", "7"]), 4);
    assert_eq!(code(&["identify", "--n", "33", "--minT", "1"]), 4);
    assert_eq!(code(&["verify", "--n", "0"]), 6);
}

#[test]
fn table_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mbf"))
        .args(["identify", "--n", "5", "--fun", &"0001".repeat(8)])
        .env("MBF_TABLE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_writes_histograms_only_on_success() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = mbf(&["verify", "--n", "3", "--out", out]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("n,total,q_max,q_ave,peak_tpi_max,peak_tpc_max\n3,20,6,4.70,"));
    let q = std::fs::read_to_string(dir.path().join("q_histogram_n3.csv")).unwrap();
    let counts: u64 = q
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(counts, 20);
    let ratio = std::fs::read_to_string(dir.path().join("ratio_histogram_n3.csv")).unwrap();
    assert!(ratio.starts_with("ratio_percent_bin,count_excluding_zero_function\n"));
    let counts: u64 = ratio
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(counts, 19);

    let o = mbf(&["verify", "--n", "0", "--out", out]);
    assert_eq!(o.status.code(), Some(6));
    assert!(!dir.path().join("q_histogram_n0.csv").exists());
}

#[test]
fn matrix_output() {
    assert_eq!(stdout(&mbf(&["matrix", "--n", "1"])), "1 1\n0 1\n");
    assert_eq!(
        stdout(&mbf(&["matrix", "--n", "1", "--transpose"])),
        "1 0\n1 1\n"
    );
}
