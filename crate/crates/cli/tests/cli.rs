use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn gnf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnf"))
        .args(args)
        .env_remove("GNF_TOL_OVERRIDE")
        .env_remove("CI")
        .output()
        .expect("gnf runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn entries(doc: &Value) -> Vec<(f64, f64)> {
    doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_f64().unwrap(), e[1].as_f64().unwrap()))
        .collect()
}

#[test]
fn emit_json_shape_and_ratio_pattern() {
    let o = gnf(&[
        "emit", "--family", "dy_slN", "--param", "N=2", "--param", "u=1", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["family"], "dy_slN");
    assert_eq!(doc["dim"], 4);
    assert_eq!(doc["graded"], false);
    assert_eq!(doc["params"]["N"], "2");
    let e = entries(&doc);
    assert_eq!(e.len(), 16);
    let a = e[0].0;
    // diag(1, ½, ½, 1) up to the overall factor, with off-diagonal ½ in the swap block
    for (k, want) in [(0, 1.0), (5, 0.5), (6, 0.5), (9, 0.5), (10, 0.5), (15, 1.0)] {
        assert!((e[k].0 / a - want).abs() < 1e-15, "entry {k}");
        assert_eq!(e[k].1, 0.0);
    }
}

#[test]
fn emit_round_trip_is_bit_identical() {
    let o = gnf(&[
        "emit",
        "--family",
        "uql_slN",
        "--param",
        "N=3",
        "--param",
        "q=0.7+0.2i",
        "--param",
        "z=1.3,-0.4",
        "--param",
        "x1=0.9",
        "--param",
        "x2=0.1-0.2i",
        "--param",
        "x3=-1.0",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let doc: Value = serde_json::from_str(&text).unwrap();
    let e = entries(&doc);
    assert_eq!(e.len(), 81);
    // every printed number parses back to the same f64 and prints identically again
    let req: std::collections::BTreeMap<String, String> =
        serde_json::from_value(doc["params"].clone()).unwrap();
    let (_, m) =
        gnf_core::catalog::evaluate("uql_slN", &gnf_core::catalog::Request::new(req)).unwrap();
    for (z, (re, im)) in m.data().iter().zip(&e) {
        assert_eq!(
            (z.re.to_bits(), z.im.to_bits()),
            (re.to_bits(), im.to_bits())
        );
    }
    let again = serde_json::to_string(&doc).unwrap();
    assert_eq!(again.trim(), text.trim());
    let start = text.find("\"entries\":[").unwrap() + 10;
    let body = &text[start..start + text[start..].find("]]").unwrap()];
    let raw: Vec<&str> = body
        .split(['[', ']', ',', '}'])
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('"'))
        .collect();
    assert_eq!(raw.len(), 162);
    for s in raw {
        assert_eq!(
            s.split('e')
                .next()
                .unwrap()
                .chars()
                .filter(char::is_ascii_digit)
                .count(),
            17
        );
    }
}

#[test]
fn emit_q_one_is_identity() {
    let o = gnf(&[
        "emit", "--family", "uq_slN", "--param", "N=2", "--param", "q=1",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for (k, (re, im)) in entries(&doc).into_iter().enumerate() {
        assert_eq!(re, if k % 5 == 0 { 1.0 } else { 0.0 });
        assert_eq!(im, 0.0);
    }
}

#[test]
fn emit_csv_matches_json() {
    let args = [
        "emit",
        "--family",
        "dyr_slN",
        "--param",
        "N=2",
        "--param",
        "r=2.3",
        "--param",
        "u=0.3+0.1i",
    ];
    let j: Value = serde_json::from_str(&stdout(&gnf(&args))).unwrap();
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let text = stdout(&gnf(&csv_args));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,params,dim,graded,row,col,re,im"));
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 16);
    for (k, (re, im)) in entries(&j).into_iter().enumerate() {
        let r = &rows[k];
        assert_eq!(r[1], "N=2;r=2.3;u=0.3+0.1i");
        assert_eq!(
            (
                r[4].parse::<usize>().unwrap(),
                r[5].parse::<usize>().unwrap()
            ),
            (k / 4, k % 4)
        );
        assert_eq!(r[6].parse::<f64>().unwrap().to_bits(), re.to_bits());
        assert_eq!(r[7].parse::<f64>().unwrap().to_bits(), im.to_bits());
    }
}

#[test]
fn singular_dynamical_parameter_exits_2() {
    let o = gnf(&[
        "emit", "--family", "bql_slN", "--param", "N=2", "--param", "q=0.5", "--param", "w1=1",
        "--param", "w2=1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("singular dynamical parameter"),
        "{}",
        stderr(&o)
    );
    assert!(stdout(&o).is_empty());
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        &["emit", "--family", "nope"][..],
        &[
            "emit", "--family", "uq_slN", "--param", "N=2", "--param", "q=abc",
        ],
        &[
            "emit", "--family", "uq_slN", "--param", "N=2", "--param", "q=0.5", "--param", "zz=1",
        ],
        &["emit", "--family", "uq_slN", "--param", "N2"],
        &["check", "--suite", "nope", "--seed", "1", "--samples", "1"],
        &["check", "--suite", "ybe", "--seed", "1", "--samples", "0"],
        &["limits", "--which", "p0", "--grid", ""],
        &["limits", "--which", "scaling", "--grid", " , "],
        &["limits", "--which", "p0", "--grid", "geom:1e-2:1e-4:0"],
        &["limits", "--which", "other", "--grid", "1e-2"],
        &["frobnicate"],
    ] {
        let o = gnf(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn check_streams_reports_and_summary() {
    let o = gnf(&[
        "check",
        "--suite",
        "cocycle",
        "--seed",
        "5",
        "--samples",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let (summary, reports) = lines.split_last().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r["pass"], true);
        assert!(r["identity"].is_string() && r["family"].is_string() && r["residual"].is_number());
    }
    assert_eq!(summary["summary"]["total"], reports.len());
    assert_eq!(summary["summary"]["failed"], 0);
    // identical apart from wall-clock timings
    let strip = |t: &str| -> Vec<Value> {
        t.lines()
            .map(|l| {
                let mut v: Value = serde_json::from_str(l).unwrap();
                if let Some(o) = v.as_object_mut() {
                    o.remove("runtime_ms");
                }
                v
            })
            .collect()
    };
    assert_eq!(
        strip(&stdout(&gnf(&[
            "check",
            "--suite",
            "cocycle",
            "--seed",
            "5",
            "--samples",
            "2"
        ]))),
        strip(&text)
    );
}

#[test]
fn tolerance_override_tightens_but_ci_cannot_loosen() {
    let run = |tol: &str, ci: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_gnf"));
        c.args(["check", "--suite", "ybe", "--seed", "3", "--samples", "1"])
            .env("GNF_TOL_OVERRIDE", tol)
            .env_remove("CI");
        if let Some(v) = ci {
            c.env("CI", v);
        }
        c.output().unwrap()
    };
    assert_eq!(run("1e-40", None).status.code(), Some(1));
    assert_eq!(run("1e-40", Some("true")).status.code(), Some(1));
    // a huge override is honoured outside CI and ignored inside it
    let loose: Vec<Value> = stdout(&run("1e3", None))
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(loose[..loose.len() - 1].iter().all(|r| r["tol"] == 1e3));
    let ci: Vec<Value> = stdout(&run("1e3", Some("1")))
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(ci[..ci.len() - 1]
        .iter()
        .all(|r| r["tol"].as_f64().unwrap() < 1.0));
    assert_eq!(run("soon", None).status.code(), Some(2));
}

#[test]
fn limits_table_decays() {
    let o = gnf(&["limits", "--which", "p0", "--grid", "1e-2,1e-3,1e-4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("parameter,max_gap,decay_ratio"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][2], "");
    for r in &rows[1..] {
        let ratio: f64 = r[2].parse().unwrap();
        assert!((0.05..0.2).contains(&ratio), "{ratio}");
    }
    let o = gnf(&[
        "limits",
        "--which",
        "scaling",
        "--grid",
        "geom:1e-2:1e-4:3",
        "--param",
        "N=3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("gnf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(
        f,
        "[emit]\nfamily = \"uq_slN\"\nformat = \"csv\"\n[emit.params]\nN = 2\nq = \"0.5\"\n"
    )
    .unwrap();
    drop(f);
    let p = path.to_str().unwrap();
    let o = gnf(&["--config", p, "emit"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("uq_slN,N=2;q=0.5,4,"));
    let o = gnf(&["--config", p, "emit", "--format", "json", "--param", "N=3"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["dim"], 9);
    assert_eq!(doc["params"]["q"], "0.5");
    std::fs::write(&path, "[emit]\nfamly = \"x\"\n").unwrap();
    assert_eq!(gnf(&["--config", p, "emit"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
