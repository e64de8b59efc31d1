use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

struct Run {
    code: i32,
    stdout: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).expect("stdout is json")
    }
}

fn vosa(job: &Value, args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vosa"));
    cmd.args(args)
        .env_remove("VOSA_CUTOFF_LIMIT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(job.to_string().as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

fn check_named<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == name)
        .unwrap()
}

#[test]
fn ns_gram_at_three_halves() {
    let r = vosa(
        &json!({"construction":"ns","parameters":{"c":"7/10","h":"1/10"},"cutoff":"2","checks":["gram","psd"]}),
        &[],
        &[],
    );
    assert_eq!(r.code, 0);
    let rep = r.json();
    let grams = check_named(&rep, "gram")["details"].as_array().unwrap();
    let w = grams.iter().find(|g| g["weight"] == "3/2").unwrap();
    assert_eq!(w["matrix"], json!([["2/3", "2/5"], ["2/5", "6/25"]]));
    let psd = check_named(&rep, "psd")["details"].as_array().unwrap();
    let w = psd.iter().find(|g| g["weight"] == "3/2").unwrap();
    assert_eq!(w["verdict"], "psd");
    assert_eq!(w["rank"], 1);
}

#[test]
fn lattice_invariance_passes() {
    let r = vosa(
        &json!({"construction":"lattice","parameters":{"gram":[[2]]},"cutoff":"3","checks":["invariance"]}),
        &[],
        &[],
    );
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["status"], "pass");
}

#[test]
fn asymmetric_gram_is_rejected() {
    let r = vosa(
        &json!({"construction":"lattice","parameters":{"gram":[[2,1],[0,2]]},"cutoff":"2","checks":["invariance"]}),
        &[],
        &[],
    );
    assert_eq!(r.code, 2);
    assert!(r.json()["error"].as_str().unwrap().contains("entry (0, 1)"));
}

#[test]
fn malformed_jobs_exit_two() {
    for bad in [
        json!({"construction":"ns","parameters":{"c":"7/10"},"cutoff":"2","checks":[]}),
        json!({"construction":"ns","parameters":{"c":"7/10"},"cutoff":"0","checks":["gram"]}),
        json!({"construction":"ns","parameters":{"c":"7/10"},"cutoff":"1/3","checks":["gram"]}),
        json!({"construction":"ns","parameters":{"c":"7/10"},"cutoff":"2","checks":["nonsense"]}),
        json!({"construction":"moonshine","parameters":{},"cutoff":"2","checks":["gram"]}),
        json!({"construction":"fermion","parameters":{"n":1},"cutoff":"2","checks":["conformal"]}),
        json!({"construction":"fermion","parameters":{"n":1},"cutoff":"2","checks":["gram"],"extra":1}),
    ] {
        assert_eq!(vosa(&bad, &[], &[]).code, 2, "{bad}");
    }
}

#[test]
fn small_cutoff_exits_three() {
    let r = vosa(
        &json!({"construction":"fermion","parameters":{"n":1},"cutoff":"1","checks":["invariance"]}),
        &[],
        &[],
    );
    assert_eq!(r.code, 3);
    assert_eq!(r.json()["exit_code"], 3);
}

#[test]
fn cutoff_limit_from_environment() {
    let job =
        json!({"construction":"fermion","parameters":{"n":1},"cutoff":"3","checks":["characters"]});
    assert_eq!(vosa(&job, &[], &[("VOSA_CUTOFF_LIMIT", "2")]).code, 2);
    assert_eq!(vosa(&job, &[], &[("VOSA_CUTOFF_LIMIT", "3")]).code, 0);
}

#[test]
fn character_tables_as_csv() {
    let cases = [
        (
            json!({"construction":"fermion","parameters":{"n":1},"cutoff":"4","checks":["characters"]}),
            "1,1,0,1,1,1,1,1,2",
        ),
        (
            json!({"construction":"lattice","parameters":{"gram":[[2]]},"cutoff":"2","checks":["characters"]}),
            "1,0,3,0,4",
        ),
        (
            json!({"construction":"lattice","parameters":{"gram":[[1]]},"cutoff":"2","checks":["characters"]}),
            "1,2,1,2,4",
        ),
    ];
    for (job, want) in cases {
        let r = vosa(&job, &["--csv"], &[]);
        assert_eq!(r.code, 0);
        let mut lines = r.stdout.lines();
        assert_eq!(lines.next(), Some("weight,dim"));
        let dims: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
        assert_eq!(dims.join(","), want);
    }
    let r = vosa(
        &json!({"construction":"fermion","parameters":{"n":1},"cutoff":"2","checks":["characters"]}),
        &["--csv"],
        &[],
    );
    assert!(r.stdout.contains("\n1/2,1\n"));
}

#[test]
fn csv_without_characters_is_rejected() {
    let r = vosa(
        &json!({"construction":"fermion","parameters":{"n":1},"cutoff":"2","checks":["gram"]}),
        &["--csv"],
        &[],
    );
    assert_eq!(r.code, 2);
}

#[test]
fn reports_are_deterministic_across_thread_counts() {
    let job = json!({
        "construction":"direct_sum",
        "parameters":{"summands":[
            {"construction":"lattice","parameters":{"gram":[[2]]}},
            {"construction":"lattice","parameters":{"gram":[[1]]}}
        ]},
        "cutoff":"2",
        "checks":["gram","psd","invariance","commutator","decompose","weight_one","characters"],
        "options":{"samples":40,"seed":7}
    });
    let a = vosa(&job, &[], &[]);
    let b = vosa(&job, &["--jobs", "4"], &[]);
    let c = vosa(&job, &["--jobs", "2"], &[]);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let rep = a.json();
    let order: Vec<&str> = rep["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    assert_eq!(
        order,
        [
            "gram",
            "psd",
            "invariance",
            "commutator",
            "decompose",
            "weight_one",
            "characters"
        ]
    );
    assert_eq!(
        check_named(&rep, "decompose")["details"]["summands"]
            .as_array()
            .unwrap()
            .len(),
        2
    );
}

#[test]
fn corrupt_form_flips_exit_code() {
    let job =
        json!({"construction":"fermion","parameters":{"n":1},"cutoff":"3","checks":["invariance"]});
    assert_eq!(vosa(&job, &[], &[]).code, 0);
    let r = vosa(&job, &["--corrupt-form=3/2"], &[]);
    assert_eq!(r.code, 1);
    let rep = r.json();
    let w = &check_named(&rep, "invariance")["witnesses"][0];
    for key in ["a", "m", "u", "v", "lhs", "rhs"] {
        assert!(!w[key].is_null(), "{key}");
    }
}

#[test]
fn conformal_comparisons() {
    let a1 = |kind: Value| json!({"construction":"lattice","parameters":{"gram":[[2]]},"cutoff":"2","checks":["conformal"],"options":{"conformal":kind}});
    let r = vosa(
        &a1(json!({"kind":"sugawara","level":"1","dual_coxeter":"2"})),
        &[],
        &[],
    );
    assert_eq!(r.code, 0);
    assert_eq!(
        check_named(&r.json(), "conformal")["details"]["difference_norm"],
        "0"
    );
    let r = vosa(&a1(json!({"kind":"heisenberg"})), &[], &[]);
    assert_eq!(r.code, 1);
    assert!(!check_named(&r.json(), "conformal")["witnesses"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn tensor_of_fermions_from_the_command_line() {
    let job = json!({
        "construction":"tensor",
        "parameters":{"factors":[
            {"construction":"fermion","parameters":{"n":1}},
            {"construction":"fermion","parameters":{"n":1}}
        ]},
        "cutoff":"2",
        "checks":["characters","invariance","psd"]
    });
    let r = vosa(&job, &["--csv"], &[]);
    assert_eq!(r.code, 0);
    let direct = vosa(
        &json!({"construction":"fermion","parameters":{"n":2},"cutoff":"2","checks":["characters"]}),
        &["--csv"],
        &[],
    );
    assert_eq!(r.stdout, direct.stdout);
}

#[test]
fn mismatched_direct_sum_is_rejected() {
    let job = json!({
        "construction":"direct_sum",
        "parameters":{"summands":[
            {"construction":"fermion","parameters":{"n":1}},
            {"construction":"lattice","parameters":{"gram":[[2]]}}
        ]},
        "cutoff":"2",
        "checks":["characters"]
    });
    let r = vosa(&job, &[], &[]);
    assert_eq!(r.code, 2);
    assert!(r.json()["error"]
        .as_str()
        .unwrap()
        .contains("central charges"));
}

#[test]
fn job_from_file() {
    let dir = std::env::temp_dir().join(format!("vosa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.json");
    std::fs::write(
        &path,
        r#"{"construction":"ns","parameters":{"c":"3/2"},"cutoff":"2","checks":["characters","invariance"]}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_vosa"))
        .arg(&path)
        .env_remove("VOSA_CUTOFF_LIMIT")
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    std::fs::remove_dir_all(&dir).ok();
}
