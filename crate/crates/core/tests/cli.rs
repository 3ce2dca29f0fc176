use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bihole(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bihole"))
        .args(args)
        .env_remove("BIHOLE_ORACLE_MAX")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const C6: &str = "3 3\n0 0\n0 1\n1 1\n1 2\n2 0\n2 2\n";

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn bound_reads_stdin() {
    let o = bihole(&["bound", "-"], C6);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "floor_bound"), "1");
    assert_eq!(field(&text, "strengthened"), "1/3");
    assert_eq!(field(&text, "caro_wei_sum"), "2");

    let default_input = bihole(&["bound"], C6);
    assert_eq!(default_input.stdout, o.stdout);
}

#[test]
fn bound_json_is_exact() {
    let o = bihole(&["bound", "--json", "-d", "1"], "2 2\n0 0\n0 1\n1 0\n1 1\n");
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["floor_bound"], 1);
    assert_eq!(v["caro_wei_sum"]["num"], "8");
    assert_eq!(v["caro_wei_sum"]["den"], "3");
}

#[test]
fn edgeless_graph_bound_is_n() {
    let o = bihole(&["bound"], "4 4\n# no edges\n");
    assert_eq!(field(&stdout(&o), "floor_bound"), "4");
}

#[test]
fn extract_verify_and_trace() {
    let o = bihole(&["extract", "--verify", "--trace"], C6);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["witness"]["size"], 1);
    assert_eq!(v["trace"]["steps"].as_array().unwrap().len(), 2);

    let o = bihole(&["extract", "-d", "2", "--verify"], "3 3\n0 0\n0 1\n0 2\n1 0\n1 1\n1 2\n2 0\n2 1\n2 2\n");
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["size"].as_u64().unwrap() >= 2);
    assert_eq!(v["elimination_order"].as_array().unwrap().len(), 2 * v["size"].as_u64().unwrap() as usize);
}

#[test]
fn oracle_values() {
    let k44 = bihole(&["gen", "--model", "complete", "-n", "4"], "");
    assert_eq!(stdout(&bihole(&["oracle"], &stdout(&k44))).trim(), "0");
    let m8 = bihole(&["gen", "--model", "matching", "-n", "8"], "");
    assert_eq!(stdout(&bihole(&["oracle"], &stdout(&m8))).trim(), "4");
    let k22 = bihole(&["gen", "--model", "complete", "-n", "2"], "");
    assert_eq!(stdout(&bihole(&["oracle", "-d", "1"], &stdout(&k22))).trim(), "1");
}

#[test]
fn exit_codes() {
    assert_eq!(bihole(&["bound"], "2 3\n0 0\n").status.code(), Some(3));
    assert_eq!(bihole(&["bound"], "three three\n").status.code(), Some(2));
    assert_eq!(bihole(&["bound"], "2 2\n0 5\n").status.code(), Some(2));
    assert_eq!(bihole(&["bound", "-d", "-1"], C6).status.code(), Some(2));
    assert_eq!(bihole(&["bound", "/nonexistent/graph.txt"], "").status.code(), Some(1));
    assert_eq!(bihole(&["oracle", "--limits", "2"], C6).status.code(), Some(5));
    assert_eq!(bihole(&["gen", "--model", "petersen", "-n", "3"], "").status.code(), Some(2));
    assert_eq!(bihole(&["gen", "--model", "gnp", "-n", "3", "-p", "1.5"], "").status.code(), Some(2));
    assert_eq!(bihole(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(bihole(&["--help"], "").status.code(), Some(0));
}

#[test]
fn oracle_limit_from_environment() {
    let run = |env: &str| {
        Command::new(env!("CARGO_BIN_EXE_bihole"))
            .args(["oracle", "-"])
            .env("BIHOLE_ORACLE_MAX", env)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .and_then(|mut c| {
                c.stdin.take().unwrap().write_all(C6.as_bytes())?;
                c.wait_with_output()
            })
            .unwrap()
    };
    assert_eq!(run("2").status.code(), Some(5));
    assert_eq!(run("3").status.code(), Some(0));
    assert_eq!(run("bogus").status.code(), Some(2));
}

#[test]
fn gen_is_byte_reproducible() {
    let a = bihole(&["gen", "--model", "gnp", "-n", "20", "-p", "0.3", "--seed", "42"], "");
    let b = bihole(&["gen", "--model", "gnp", "-n", "20", "-p", "0.3", "--seed", "42"], "");
    let c = bihole(&["gen", "--model", "gnp", "-n", "20", "-p", "0.3", "--seed", "43"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&a).starts_with("20 20\n"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let o = bihole(&["gen", "--model", "gnp", "-n", "20", "-p", "0.3", "--seed", "42", "-o", path.to_str().unwrap()], "");
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn experiment_rows_and_summary() {
    let o = bihole(
        &["experiment", "--models", "gnp", "--n-range", "12", "--p-grid", "0.3", "--d-set", "0", "--trials", "100", "--seed", "7"],
        "",
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "model,n,p,seed,d,floor_bound,ceil_strengthened,avg_deg_bound,extracted,exact,verified");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 100);
    for row in &rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 11);
        let floor: usize = cols[5].parse().unwrap();
        let extracted: usize = cols[8].parse().unwrap();
        let exact: usize = cols[9].parse().unwrap();
        assert!(floor <= extracted && extracted <= exact);
        assert_eq!(cols[10], "true");
    }
    assert!(String::from_utf8_lossy(&o.stderr).contains("violations=0"));
}

#[test]
fn experiment_degenerate_rows_have_exact_for_small_n() {
    let o = bihole(
        &["experiment", "--models", "gnp,crown", "--n-range", "5..=8", "--d-set", "1,2", "--trials", "2"],
        "",
    );
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().skip(1).all(|r| r.split(',').nth(9).is_some_and(|e| !e.is_empty())));
}

#[test]
fn experiment_zero_trials_is_header_only() {
    let o = bihole(&["experiment", "--trials", "0"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn experiment_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let o = bihole(&["experiment", "--trials", "2", "--n-range", "4..6", "-o", path.to_str().unwrap()], "");
    assert!(o.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 2);
}
