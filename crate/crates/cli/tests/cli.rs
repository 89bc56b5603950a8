use std::path::PathBuf;
use std::process::{Command, Output};

use padiclab::suite::{check, CheckId};
use padiclab::Params;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_padiclab"));
    c.env_remove("PADICLAB_JOBS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("padiclab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_writes_jsonl() {
    let out = scratch("report.jsonl");
    let o = run(&[
        "verify",
        "--checks",
        "all",
        "--primes",
        "7..60",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let first = text.lines().next().unwrap();
    assert!(
        first.starts_with(r#"{"id":"C01","p":7,"params":"","t":3,"#),
        "{first}"
    );
    assert!(text.lines().all(|l| !l.contains("\"fail\"")));
}

#[test]
fn csv_has_header() {
    let o = run(&[
        "verify", "--checks", "C17", "--primes", "3..7", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "id,p,params,t,lhs_val,lhs_unit,rhs_val,rhs_unit,status,ms\n\
         C17,3,,2,0,5,0,5,pass,0\n\
         C17,5,,2,2,0,2,0,pass,0\n\
         C17,7,,2,2,0,2,0,pass,0\n"
    );
}

#[test]
fn jobs_do_not_change_output() {
    let a = run(&["verify", "--primes", "3..80", "--jobs", "1"]);
    let b = run(&["verify", "--primes", "3..80", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = bin()
        .args(["verify", "--primes", "3..80"])
        .env("PADICLAB_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--checks", "C99"][..],
        &["verify", "--primes", "2..10"],
        &["verify", "--primes", "10..3"],
        &["verify", "--jobs", "0"],
        &["verify", "--bogus"],
        &["eval", "--prime", "9", "--expr", "1"],
        &["eval", "--prime", "7", "--expr", "sum(k,1,"],
        &["stmt"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    let o = bin()
        .args(["verify", "--primes", "3..5"])
        .env("PADICLAB_JOBS", "x")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = scratch("run.toml");
    std::fs::write(
        &cfg,
        "checks = \"C15\"\nprimes = \"3..5\"\nformat = \"csv\"\n[grid]\nlucas_m = \"1..1\"\n",
    )
    .unwrap();
    let o = run(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = run(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "json",
        "--primes",
        "5",
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    assert!(
        text.starts_with(r#"{"id":"C15","p":5,"params":"m=1","#),
        "{text}"
    );
    std::fs::write(&cfg, "prime = \"3..5\"\n").unwrap();
    assert_eq!(
        run(&["verify", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn identity_subcommand() {
    let o = run(&["identity", "--name", "bb_ag", "--n", "1..25"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 25);
    assert_eq!(
        run(&["identity", "--name", "t31_u", "--n", "1..5", "--m", "-2..2", "--quiet"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["identity", "--name", "t42", "--primes", "7..11"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(run(&["identity", "--name", "nope"]).status.code(), Some(2));
}

#[test]
fn eval_matches_suite() {
    let o = run(&[
        "eval",
        "--prime",
        "13",
        "--precision",
        "4",
        "--expr",
        "p*sum(k,1,p-1,1/(k*binom(2*k,k)))",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert_eq!(line.trim(), "valuation=2 unit=84 mod 13^4");
    let row = check(
        CheckId::new(15).unwrap(),
        13,
        &Params::new().with_int("m", 1),
    )
    .unwrap();
    assert_eq!(row.lhs.unwrap().valuation, 2);
    let o = run(&[
        "eval",
        "--prime",
        "7",
        "--expr",
        "binom(2*k,k)",
        "--bind",
        "k=5",
    ]);
    assert_eq!(stdout(&o).trim(), "valuation=1 unit=36 mod 7^4");
}

#[test]
fn stmt_files() {
    let good = scratch("good.cong");
    std::fs::write(
        &good,
        "# harmonic numbers vanish\nH(1; p - 1) === 0 mod p for p > 3\n",
    )
    .unwrap();
    let o = run(&[
        "stmt",
        good.to_str().unwrap(),
        "--primes",
        "3..13",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("S2,3,,1,,,,,not-applicable,0"));

    let bad = scratch("bad.cong");
    std::fs::write(&bad, "H(1; p - 1) === 1 mod p\n").unwrap();
    assert_eq!(
        run(&["stmt", bad.to_str().unwrap(), "--primes", "5..7"])
            .status
            .code(),
        Some(1)
    );

    let broken = scratch("broken.cong");
    std::fs::write(&broken, "1 === 1 mod p\nH(1 === 0 mod p\n").unwrap();
    let o = run(&["stmt", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(
        run(&["stmt", "--corpus", "--primes", "3..20"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn bench_table() {
    let o = run(&["bench", "--checks", "C01,C17", "--primes", "3..50"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("check"));
    assert!(lines[3].starts_with("total"));
}
