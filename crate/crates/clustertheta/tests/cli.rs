use std::process::{Command, Output};

fn bin(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_clustertheta"));
    c.args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn success_prints_to_stdout() {
    let o = bin(
        &[
            "theta",
            "--b",
            "2",
            "--m",
            "1,-1,0,0",
            "--endpoint",
            "3/2,1",
            "--order",
            "6",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lines: 3"));
}

#[test]
fn degenerate_endpoint_exits_2() {
    let o = bin(
        &[
            "theta",
            "--b",
            "2",
            "--m",
            "1,-1,0,0",
            "--endpoint",
            "1,-3/2",
            "--order",
            "6",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("general position"));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(bin(&["scatter", "--b", "2"], &[]).status.code(), Some(2));
    assert_eq!(
        bin(&["ar", "--quiver", "kronecker2", "--dim", "1,1,1"], &[])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bin(
            &[
                "grass",
                "--quiver",
                "kronecker2",
                "--D",
                "5,6",
                "--e",
                "2,4",
                "--svg"
            ],
            &[]
        )
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn ceilings_exit_3() {
    let o = bin(
        &["scatter", "--b", "3", "--order", "8"],
        &[("CLUSTERTHETA_MAX_TERMS", "3")],
    );
    assert_eq!(o.status.code(), Some(3));
    let o = bin(
        &[
            "grass",
            "--quiver",
            "kronecker2",
            "--D",
            "5,6",
            "--e",
            "2,4",
        ],
        &[("CLUSTERTHETA_MAX_CELLS", "100")],
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn formats_switch() {
    let svg = stdout(&bin(&["scatter", "--b", "1", "--order", "3", "--svg"], &[]));
    assert!(svg.starts_with("<svg"));
    let json = stdout(&bin(
        &["scatter", "--b", "1", "--order", "3", "--format", "json"],
        &[],
    ));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["walls"].as_array().unwrap().len(), 3);
    let dot = stdout(&bin(&["mutate", "--quiver", "a2", "--dot"], &[]));
    assert!(dot.starts_with("graph exchange"));
}

#[test]
fn check_job_file() {
    let dir = std::env::temp_dir().join(format!("clustertheta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("job.json");
    let expect = "b = 1: loop is the identity to order 4 (3 walls)\n";
    let job = serde_json::json!({"job": {"command": "check", "inputs": {"b": 1}, "order": 4}, "expect": expect});
    std::fs::write(&path, job.to_string()).unwrap();
    let o = bin(&["check", "--job", path.to_str().unwrap()], &[]);
    assert_eq!(stdout(&o), "ok\n");
    let job = serde_json::json!({"job": {"command": "check", "inputs": {"b": 1}, "order": 4}, "expect": "nope"});
    std::fs::write(&path, job.to_string()).unwrap();
    assert_eq!(
        bin(&["check", "--job", path.to_str().unwrap()], &[])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
