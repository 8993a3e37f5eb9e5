use std::collections::BTreeSet;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quartet"))
        .args(args)
        .env_remove("QUARTET_MAX_INDEX_BYTES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn gen_raw_row() {
    let o = run(&["gen", "--family", "euler1", "--param", "5/3", "--raw"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "euler1 param=5/3 A=17332 B=529 C=6673 D=17236 a=1\n"
    );
}

#[test]
fn gen_negative_param_json() {
    let o = run(&[
        "gen", "--family", "nega16", "--param", "-1/3", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "{\"family\":\"nega16\",\"param\":\"-1/3\",\"A\":\"89841\",\"B\":\"27879\",\
         \"C\":\"-90829\",\"D\":\"-43307\",\"a\":\"-1\",\"mode\":\"raw\"}\n"
    );
}

#[test]
fn gen_canonical_absorbs_a() {
    let o = run(&[
        "gen",
        "--family",
        "hayashi",
        "--param",
        "7/4",
        "--canonical",
    ]);
    assert_eq!(
        stdout(&o),
        "hayashi param=7/4 A=542 B=103 C=514 D=359 a=1\n"
    );
    let o = run(&["gen", "--family", "t6_3", "--param", "1", "--canonical"]);
    assert_eq!(stdout(&o), "t6_3 param=1 A=4 B=1 C=2 D=3 a=3\n");
}

#[test]
fn gen_trivial_warns() {
    let o = run(&["gen", "--family", "euler1", "--param", "1", "--raw"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("trivial"));
    assert_eq!(stdout(&o), "euler1 param=1 A=1 B=0 C=0 D=1 a=1\n");
}

#[test]
fn gen_errors() {
    let o = run(&["gen", "--family", "t6_7", "--param", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("pole"), "{}", stderr(&o));
    assert_eq!(
        code(&run(&["gen", "--family", "nosuch", "--param", "1"])),
        2
    );
    assert_eq!(
        code(&run(&["gen", "--family", "euler1", "--param", "1 /2"])),
        2
    );
    assert_eq!(
        code(&run(&["gen", "--family", "euler1", "--param", "1/0"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "gen",
            "--family",
            "euler1",
            "--param",
            "1",
            "--raw",
            "--canonical"
        ])),
        2
    );
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "--a", "9", "-q", "625,77,85,361"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "residual 0\nSOLUTION\n");

    let o = run(&["verify", "--a", "1", "-q", "2,1,1,1"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "residual 15\nNOT A SOLUTION\n");

    let o = run(&["verify", "--a", "-1", "-q", "7,157,-227,239"]);
    assert_eq!(code(&o), 0);

    assert_eq!(code(&run(&["verify", "--a", "1", "-q", "1,2,3"])), 2);
    assert_eq!(code(&run(&["verify", "--a", "1", "-q", "1,2,x,3"])), 2);
    assert_eq!(code(&run(&["verify", "--a", "0", "-q", "1,2,3,4"])), 2);
}

#[test]
fn search_examples() {
    let o = run(&["search", "--a", "1", "--bound", "160"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "{\"family\":null,\"param\":null,\"A\":\"158\",\"B\":\"59\",\"C\":\"134\",\
         \"D\":\"133\",\"a\":\"1\",\"mode\":\"canonical\"}\n"
    );
    let o = run(&["search", "--a", "3", "--bound", "12", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "family,param,A,B,C,D,a,mode\n,,4,1,2,3,3,canonical\n,,11,2,7,8,3,canonical\n"
    );
    assert_eq!(code(&run(&["search", "--a", "1", "--bound", "0"])), 2);
    assert_eq!(code(&run(&["search", "--a", "0", "--bound", "5"])), 2);
}

#[test]
fn search_index_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_quartet"))
        .args(["search", "--a", "1", "--bound", "100"])
        .env("QUARTET_MAX_INDEX_BYTES", "1000")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("QUARTET_MAX_INDEX_BYTES"));
    assert!(o.stdout.is_empty());
}

#[test]
fn search_formats_carry_the_same_records() {
    let args = ["search", "--a", "-1", "--bound", "300"];
    let json = stdout(&run(&[&args[..], &["--format", "json"]].concat()));
    let csv = stdout(&run(&[&args[..], &["--format", "csv"]].concat()));
    let from_json: BTreeSet<Vec<String>> = json
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            ["A", "B", "C", "D", "a", "mode"]
                .iter()
                .map(|k| v[k].as_str().unwrap().to_string())
                .collect()
        })
        .collect();
    let from_csv: BTreeSet<Vec<String>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').skip(2).map(String::from).collect())
        .collect();
    assert!(!from_json.is_empty());
    assert_eq!(from_json, from_csv);
    assert_eq!(json.lines().count(), csv.lines().count() - 1);
}

#[test]
fn search_is_byte_stable_across_workers() {
    let one = run(&["search", "--a", "-1", "--bound", "200", "--workers", "1"]);
    let four = run(&["search", "--a", "-1", "--bound", "200", "--workers", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert!(!one.stdout.is_empty());
}

#[test]
fn table_1() {
    let o = run(&["table", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.ends_with("MATCH")));
    assert!(rows[3].contains("17332 529 6673 17236"));
}

#[test]
fn table_2_reports_erratum() {
    let o = run(&["table", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("1584749 2061283 -555617 2219449 a=1  ERRATUM"));
}

#[test]
fn table_3_and_4() {
    let o = run(&["table", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[0].contains(" 7 157 -227 239 a=-1"));
    let o = run(&["table", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn table_7() {
    let o = run(&["table", "7"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 33);
    assert!(rows.iter().all(|r| r.ends_with("MATCH")));
    let dup = rows
        .iter()
        .filter(|r| r.contains("printed a=1 631 222 558 503"))
        .count();
    assert_eq!(dup, 2);
}

#[test]
fn table_output_is_stable() {
    for id in ["1", "7"] {
        for fmt in ["text", "json", "csv"] {
            let a = run(&["table", id, "--format", fmt]);
            let b = run(&["table", id, "--format", fmt]);
            assert_eq!(a.stdout, b.stdout);
            assert_eq!(code(&a), 0);
        }
    }
    assert_eq!(code(&run(&["table", "5"])), 2);
}

#[test]
fn identity_all() {
    let o = run(&["identity", "all"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 17);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
    assert!(out.contains("PASS t6_12"));
    assert_eq!(stdout(&run(&["identity", "euler1"])), "PASS euler1\n");
    assert_eq!(code(&run(&["identity", "nosuch"])), 2);
}

#[test]
fn derive_case_1() {
    let o = run(&["derive", "--case", "1", "--variant", "linear", "--t", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "t = 3\nz = -24/41\nrho = 17/41\nomega = 50/41\nresolvent residual = 0\n\
         A=158 B=-59 C=133 D=134 a=1\n"
    );
    let o = run(&[
        "derive",
        "--case",
        "1",
        "--variant",
        "quadratic",
        "--t",
        "1",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("(t²−1)⁴ = 0"));
    assert_eq!(code(&run(&["derive", "--case", "1", "--t", "3"])), 2);
}

#[test]
fn derive_case_2() {
    let o = run(&["derive", "--case", "2", "--n", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for want in [
        "v = 3\n",
        "rho = 13/3\n",
        "t = 22/13\n",
        "omega = 267/13\n",
        "A=7 B=157 C=-227 D=239 a=-1\n",
    ] {
        assert!(out.contains(want), "{want} missing from\n{out}");
    }
    let o = run(&["derive", "--case", "2", "--n", "0"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&run(&["derive", "--case", "3", "--n", "1"])), 2);
}

#[test]
fn families_dump() {
    let o = run(&["families"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("euler1\n  p = 2t^7 + 20t^5 + 2t^3 + 8t\n"));
    assert!(out.contains("hayashi\n"));
    assert_eq!(out.matches("\n  a = ").count(), 17);
}
