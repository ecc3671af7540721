use std::path::Path;
use std::process::{Command, Output};

fn cmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmax"))
        .args(args)
        .env_remove("CMAX_CONFIG")
        .output()
        .expect("spawn cmax")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Parse a CSV body (header + rows) into numeric columns, skipping `#` lines.
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(|f| f.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

fn json_lines(text: &str) -> Vec<serde_json::Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn boost_identity_and_example() {
    let o = cmax(&["boost", "--cm", "2", "--v", "0", "--event", "0,0,0,1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(h, ["x", "y", "z", "t"]);
    assert_eq!(rows, vec![vec![0.0, 0.0, 0.0, 1.0]]);

    let o = cmax(&["boost", "--cm", "2", "--v", "1.2", "--event", "0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = csv_rows(&stdout(&o));
    assert!((rows[0][0] - 1.5).abs() < 1e-15);
    assert!((rows[0][3] - 1.25).abs() < 1e-15);
}

#[test]
fn boost_at_maximum_speed_is_rejected() {
    let o = cmax(&["boost", "--cm", "2", "--v", "2.0", "--event", "0,0,0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("BoostAtMaximumSpeed"));
    assert!(o.stdout.is_empty());
}

#[test]
fn boost_round_trip_through_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let events = dir.path().join("events.csv");
    std::fs::write(&events, "x,y,z,t\n1,2,3,4\n-0.5,0,0,0.25\n").unwrap();
    let fwd = dir.path().join("fwd.csv");
    let o = cmax(&[
        "boost", "--cm", "3", "--v", "-1.7", "--events", events.to_str().unwrap(),
        "--output", fwd.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = cmax(&["boost", "--cm", "3", "--v", "-1.7", "--inverse", "--events", fwd.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (_, rows) = csv_rows(&stdout(&o));
    let expected = [[1.0, 2.0, 3.0, 4.0], [-0.5, 0.0, 0.0, 0.25]];
    for (r, e) in rows.iter().zip(expected) {
        for (a, b) in r.iter().zip(e) {
            assert!((a - b).abs() < 1e-12, "{r:?}");
        }
    }
}

#[test]
fn compose_examples() {
    let o = cmax(&["compose", "--cm", "2", "--v", "1.0", "--u", "-1.0", "--inverse"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows[0][0], -1.6);

    let o = cmax(&["compose", "--cm", "2", "--v", "0.7", "--u", "2.0"]);
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows[0][0], 2.0);

    let o = cmax(&["compose", "--cm", "1.5", "--v", "1.5", "--u", "1.0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn compose_light_frame_check() {
    let o = cmax(&["compose", "--cm", "2", "--light-frame-check", "--format", "jsonl"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = &json_lines(&stdout(&o))[0];
    assert_eq!(v["u_prime"].as_f64(), Some(-1.6));
    assert_eq!(v["within_bounds"].as_bool(), Some(true));
}

#[test]
fn collide_single_scenarios() {
    let o = cmax(&["collide", "--cm", "2", "--v", "1.2", "--vprime", "0.5", "--mc", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = &json_lines(&stdout(&o))[0];
    assert!(v["momentum_residual"].as_f64().unwrap() <= 1e-12);
    assert!(v["mass_ratio_residual"].as_f64().unwrap() <= 1e-12);

    let o = cmax(&["collide", "--cm", "2", "--v", "1.2", "--vprime", "0", "--mc", "1"]);
    let v = &json_lines(&stdout(&o))[0];
    assert_eq!(v["v1"].as_f64(), Some(1.2));
    assert_eq!(v["v2"].as_f64(), Some(1.2));

    let o = cmax(&["collide", "--cm", "2", "--v", "2.5", "--vprime", "0", "--mc", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn collide_batch_of_one_hundred() {
    let dir = tempfile::tempdir().unwrap();
    let batch = dir.path().join("batch.csv");
    let mut text = String::from("m_c1,m_c2,v_cm,v_prime\n");
    for i in 0..100 {
        let f = i as f64 / 100.0;
        text.push_str(&format!("{},{},{},{}\n", 1.0 + f, 1.0 + f, 1.9 * f - 0.9, 0.95 - 1.9 * f));
    }
    std::fs::write(&batch, text).unwrap();
    let o = cmax(&["collide", "--cm", "2", "--batch", batch.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lines = json_lines(&stdout(&o));
    assert_eq!(lines.len(), 100);
    for (i, v) in lines.iter().enumerate() {
        assert!((v["m_c1"].as_f64().unwrap() - (1.0 + i as f64 / 100.0)).abs() < 1e-15);
        assert!(v["momentum_residual"].as_f64().unwrap() <= 1e-12);
    }
}

#[test]
fn collide_random_is_deterministic() {
    let args = ["collide", "--cm", "3", "--random", "50", "--seed", "11"];
    let a = cmax(&args);
    let b = cmax(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_lines(&stdout(&a)).len(), 50);
    let c = cmax(&["collide", "--cm", "3", "--random", "50", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn trajectory_free_particle_moves_uniformly() {
    let o = cmax(&[
        "trajectory", "--cm", "2", "--mc", "1", "--v0", "1.5,0.3,0", "--force", "0,0,0",
        "--dt", "0.1", "--steps", "20",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let (h, rows) = csv_rows(&text);
    assert_eq!(h, ["t", "x", "y", "z", "vx", "vy", "vz", "px", "py", "pz", "E"]);
    assert_eq!(rows.len(), 21);
    for r in &rows {
        assert!((r[4] - 1.5).abs() < 1e-14 && (r[5] - 0.3).abs() < 1e-14);
        assert!((r[1] - 1.5 * r[0]).abs() < 1e-12);
        assert_eq!(r[10], rows[0][10]);
    }
    assert!(text.lines().last().unwrap().starts_with("# work_energy_residual="));
}

#[test]
fn trajectory_constant_force_energy_is_monotone() {
    let o = cmax(&[
        "trajectory", "--cm", "2", "--mc", "1", "--v0", "0.5", "--force", "1,0,0",
        "--dt", "0.01", "--steps", "500",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let (_, rows) = csv_rows(&text);
    assert!(rows.windows(2).all(|w| w[1][10] > w[0][10]));
    let last = text.lines().last().unwrap();
    let residual: f64 = last.trim_start_matches("# work_energy_residual=").parse().unwrap();
    assert!(residual <= 1e-8, "{residual}");
}

#[test]
fn trajectory_zero_step_is_rejected() {
    let o = cmax(&["trajectory", "--cm", "2", "--mc", "1", "--force", "1,0,0", "--dt", "0", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn wave_kg_massless_dispersion() {
    let o = cmax(&["wave", "--cm", "2", "--equation", "kg", "--mc", "0", "--mode", "1", "--n", "256"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = &json_lines(&stdout(&o))[0];
    assert!(v["relative_error"].as_f64().unwrap().abs() <= 5e-3);
}

#[test]
fn wave_dirac_norm_drift() {
    let o = cmax(&["wave", "--cm", "2", "--equation", "dirac", "--mc", "1", "--mode", "1", "--steps", "1000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = &json_lines(&stdout(&o))[0];
    assert!(v["norm_drift"].as_f64().unwrap() <= 1e-8);
    assert!(v["relative_error"].as_f64().unwrap().abs() <= 1e-2);
}

#[test]
fn wave_cfl_violation_names_the_bound() {
    let dir = tempfile::tempdir().unwrap();
    let snaps = dir.path().join("snaps");
    let o = cmax(&[
        "wave", "--cm", "2", "--equation", "kg", "--mc", "0", "--mode", "1", "--dt", "0.5",
        "--snap-every", "1", "--snapshots", snaps.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("CflViolation"));
    assert!(!snaps.exists());
}

#[test]
fn wave_snapshots_and_initial_file() {
    let dir = tempfile::tempdir().unwrap();
    let snaps = dir.path().join("snaps");
    let o = cmax(&[
        "wave", "--cm", "2", "--equation", "dirac", "--mc", "1", "--mode", "2", "--n", "64",
        "--steps", "20", "--snap-every", "10", "--snapshots", snaps.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let mut names: Vec<_> = std::fs::read_dir(&snaps)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["snap_00000000.csv", "snap_00000010.csv", "snap_00000020.csv"]);
    let (h, rows) = csv_rows(&std::fs::read_to_string(snaps.join(&names[1])).unwrap());
    assert_eq!(h, ["x", "re", "im", "re_lower", "im_lower"]);
    assert_eq!(rows.len(), 64);

    // Gaussian pulse as initial data: leapfrog energy is conserved.
    let init = dir.path().join("init.csv");
    let n = 128;
    let mut text = String::from("x,re,im\n");
    for j in 0..n {
        let x = j as f64 * 10.0 / n as f64;
        text.push_str(&format!("{x},{},0\n", (-(x - 5.0) * (x - 5.0)).exp()));
    }
    std::fs::write(&init, text).unwrap();
    let o = cmax(&[
        "wave", "--cm", "2", "--equation", "kg", "--mc", "0.5", "--initial",
        init.to_str().unwrap(), "--steps", "1000",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = &json_lines(&stdout(&o))[0];
    assert!(v["energy_drift"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "[units]\ncm = 2.0\n\n[output]\nformat = \"jsonl\"\n\n[boost]\nv = 1.2\nevents = [[0.0, 0.0, 0.0, 1.0]]\n",
    )
    .unwrap();
    let o = cmax(&["boost", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = &json_lines(&stdout(&o))[0];
    assert_eq!(v["x"].as_f64(), Some(1.5));

    let o = cmax(&["boost", "--config", cfg.to_str().unwrap(), "--v", "0", "--format", "csv"]);
    let (_, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows[0], vec![0.0, 0.0, 0.0, 1.0]);

    let o = Command::new(env!("CARGO_BIN_EXE_cmax"))
        .args(["boost"])
        .env("CMAX_CONFIG", &cfg)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn config_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[units]\ncm = 2.0\n[boost]\nvelocity = 1.0\n").unwrap();
    let o = cmax(&["boost", "--config", cfg.to_str().unwrap(), "--v", "1", "--event", "0,0,0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("velocity"));
}

#[test]
fn missing_files_are_io_errors() {
    let o = cmax(&["boost", "--cm", "2", "--v", "1", "--events", "/nonexistent/events.csv"]);
    assert_eq!(o.status.code(), Some(1));
    let o = cmax(&["boost", "--config", "/nonexistent/run.toml", "--cm", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_file_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let o = cmax(&[
            "trajectory", "--cm", "2", "--mc", "1", "--v0", "1.2", "--force", "0.3,-0.1,0",
            "--dt", "0.05", "--steps", "40", "-o", p.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        std::fs::read(Path::new(&p)).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));
}
