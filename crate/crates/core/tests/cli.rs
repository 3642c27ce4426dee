use std::path::Path;

use ionrwa::cli::{main_with_args, FigureTable};

fn run(config: &Path, out: &Path, extra: &[&str]) -> i32 {
    let mut args = vec![
        "ionrwa".to_string(),
        "--config".into(),
        config.display().to_string(),
        "--out".into(),
        out.display().to_string(),
    ];
    args.extend(extra.iter().map(|s| (*s).to_string()));
    main_with_args(args)
}

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let p = dir.join("run.conf");
    std::fs::write(&p, text).unwrap();
    p
}

const SMALL: &str = "eta_steps = 11\nalpha_steps = 11\nalpha_curve_steps = 201\n";

#[test]
fn missing_config_is_exit_1() {
    assert_eq!(main_with_args(["ionrwa", "prob"]), 1);
}

#[test]
fn unknown_subcommand_is_exit_1() {
    assert_eq!(main_with_args(["ionrwa", "--config", "x", "plot"]), 1);
}

#[test]
fn bad_config_is_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    for text in ["no_such_key = 1\n", "alpha = -1\n", "eta = abc\n", "eta = 1\neta = 2\n"] {
        let cfg = write_config(dir.path(), text);
        assert_eq!(run(&cfg, &dir.path().join("out"), &["prob"]), 1, "{text}");
    }
    assert_eq!(run(&dir.path().join("absent.conf"), dir.path(), &["prob"]), 1);
}

#[test]
fn cutoff_too_small_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "fock_dim = 30\n");
    assert_eq!(run(&cfg, &dir.path().join("out"), &["validate"]), 2);
    assert!(!dir.path().join("out/validation.json").exists());
}

#[test]
fn figure_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("out");
    for cmd in ["energies", "regions", "prob", "concurrence"] {
        assert_eq!(run(&cfg, &out, &[cmd]), 0);
        let text = std::fs::read_to_string(out.join(format!("{cmd}.csv"))).unwrap();
        let table = FigureTable::from_csv(cmd, &text).unwrap();
        assert_eq!(table.to_csv(), text, "{cmd}");
        assert!(table.header.iter().any(|h| h == "config eta_steps = 11"));

        assert_eq!(run(&cfg, &out, &["--format", "json", cmd]), 0);
        let json = std::fs::read_to_string(out.join(format!("{cmd}.json"))).unwrap();
        let back = FigureTable::from_json(cmd, &json).unwrap();
        assert_eq!(back.rows, table.rows, "{cmd}");
        assert_eq!(back.to_json(), json);
    }
}

#[test]
fn regions_shape() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("out");
    assert_eq!(run(&cfg, &out, &["regions"]), 0);
    let t = FigureTable::from_csv("regions", &std::fs::read_to_string(out.join("regions.csv")).unwrap()).unwrap();
    assert_eq!(t.rows.len(), 121);
    assert_eq!(t.columns, ["eta", "alpha", "advantage", "in_gray_region"]);
}

#[test]
fn output_dir_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("from_config");
    let cfg = write_config(
        dir.path(),
        &format!("{SMALL}output_dir = {}\noutput_format = json\n", target.display()),
    );
    let code = main_with_args(["ionrwa", "--config", cfg.to_str().unwrap(), "prob"]);
    assert_eq!(code, 0);
    assert!(target.join("prob.json").exists());
}

#[test]
fn validate_small_grid_passes() {
    // No eta > 0 with alpha > 0 point, so the full diagonal check holds.
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "validate_etas = 0\nvalidate_alphas = 0,1\nvalidate_ks = 0,1\nperiods = 2\nsteps_per_period = 200\n\
         convergence_steps = 100\nrelation_steps = 10\n",
    );
    let out = dir.path().join("out");
    assert_eq!(run(&cfg, &out, &["validate"]), 0);
    let first = std::fs::read(out.join("validation.json")).unwrap();
    assert_eq!(run(&cfg, &out, &["validate"]), 0);
    assert_eq!(std::fs::read(out.join("validation.json")).unwrap(), first);

    let report: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(report["summary"]["hard_failed"], 0);
    assert_eq!(report["concurrence_relation"]["best"], "closed = wootters^2");
}

#[test]
fn validate_default_grid_reports_full_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "periods = 1\nsteps_per_period = 200\nconvergence_steps = 100\n",
    );
    let out = dir.path().join("out");
    assert_eq!(run(&cfg, &out, &["validate"]), 2);
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(out.join("validation.json")).unwrap()).unwrap();
    assert_eq!(
        report["summary"]["failed_checks"],
        serde_json::json!(["diagonal[full]"])
    );
}
