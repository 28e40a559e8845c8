use quantum_fpd::scenario::*;
use quantum_fpd::Error;

const MINIMAL: &str = r#"
name = "tiny"
[system]
kind = "spin-half"
[target]
kind = "projector"
level = 1
o_d = 1.0
[controller]
g_r = 1e-5
omega = 1.0
[controller.riccati]
init = "random"
max_iterations = 200
on_nonconvergence = "last-iterate"
warm_start = true
[discretization]
dt = 0.0505
horizon = 12
[noise]
enabled = false
"#;

fn config_key(text: &str) -> String {
    match parse_scenario(text) {
        Err(Error::Config { key, .. }) => key,
        other => panic!("expected a config error, got {other:?}"),
    }
}

#[test]
fn builtins_parse_and_round_trip() {
    let names = builtin_names();
    assert_eq!(names, ["spin-half", "spin-one-a", "spin-one-b", "morse-lih"]);
    for name in names {
        let cfg = builtin(name).unwrap();
        assert_eq!(cfg.name, name);
        let again = parse_scenario(&cfg.to_toml()).unwrap();
        assert_eq!(again, cfg);
    }
    assert!(matches!(builtin_source("nope"), Err(Error::UnknownScenario(_))));
}

#[test]
fn builtin_parameters() {
    let half = builtin("spin-half").unwrap();
    assert_eq!((half.discretization.dt, half.discretization.horizon), (0.0505, 200));
    assert_eq!(half.controller.g_r, 1e-5);
    let a = builtin("spin-one-a").unwrap();
    let b = builtin("spin-one-b").unwrap();
    assert_eq!(a.target.level, Some(1));
    assert_eq!(b.target.level, Some(2));
    let morse = builtin("morse-lih").unwrap();
    assert_eq!(morse.dim().unwrap(), 3);
    assert!(morse.noise_spec().process_std == 0.0 || !morse.noise.enabled);
}

#[test]
fn syntax_errors_carry_a_location() {
    let err = parse_scenario("name = \"x\"\n[system\nkind = 1\n").unwrap_err();
    match err {
        Error::Parse(msg) => assert!(msg.contains("line 2"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let text = MINIMAL.replace("omega = 1.0", "omega = 1.0\nomgea = 2.0");
    match parse_scenario(&text).unwrap_err() {
        Error::Parse(msg) => assert!(msg.contains("omgea"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn invalid_values_name_their_key() {
    assert_eq!(
        config_key(&MINIMAL.replace("g_r = 1e-5", "g_r = -1.0")),
        "controller.g_r"
    );
    assert_eq!(
        config_key(&MINIMAL.replace("dt = 0.0505", "dt = 0.0")),
        "discretization.dt"
    );
    assert_eq!(
        config_key(&MINIMAL.replace("horizon = 12", "horizon = 0")),
        "discretization.horizon"
    );
    assert_eq!(config_key(&MINIMAL.replace("level = 1", "level = 5")), "target.level");
    assert_eq!(
        config_key(&MINIMAL.replace("max_iterations = 200", "max_iterations = 0")),
        "controller.riccati.max_iterations"
    );
    assert_eq!(
        config_key(&MINIMAL.replace("kind = \"spin-half\"", "kind = \"spin-half\"\nenergies = [0.0, 1.0]")),
        "system.energies"
    );
    assert_eq!(
        config_key(
            &MINIMAL
                .replace("kind = \"projector\"", "kind = \"gaussian\"")
                .replace("level = 1\n", "")
        ),
        "target.kind"
    );
}

#[test]
fn custom_dipole_must_be_hermitian() {
    let text = MINIMAL.replace(
        "kind = \"spin-half\"",
        "kind = \"custom\"\nenergies = [0.0, 1.0]\ndipole = [[0.0, 1.0], [0.5, 0.0]]",
    );
    assert_eq!(config_key(&text), "system.dipole");
}

#[test]
fn steps_to_band_definition() {
    assert_eq!(steps_to_band(&[0.0, 0.5, 0.97, 1.0, 0.99], 1.0, 0.05), Some(3));
    assert_eq!(steps_to_band(&[0.99, 1.0], 1.0, 0.05), Some(1));
    assert_eq!(steps_to_band(&[0.99, 0.5], 1.0, 0.05), None);
    assert_eq!(steps_to_band(&[0.99, 0.5, 0.99], 1.0, 0.05), Some(3));
    assert_eq!(steps_to_band(&[], 1.0, 0.05), None);
}

#[test]
fn csv_round_trip_is_exact() {
    let cfg = parse_scenario(MINIMAL).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let outcome = run(&cfg, &RunOptions::writing_to(dir.path())).unwrap();
    let table = import_csv(dir.path().join("tiny.csv")).unwrap();
    assert_eq!(table.headers.len(), 7 + 2 * 4);
    assert_eq!(
        table.headers[..7],
        quantum_fpd::scenario::csv::FIXED_COLUMNS.map(String::from)
    );
    assert_eq!(table.headers[7], "rho_0_0_re");
    assert_eq!(table.rows.len(), 12);
    let traj = &outcome.trajectory;
    assert_eq!(table.column("o_t").unwrap(), traj.outputs());
    assert_eq!(table.column("u_t").unwrap(), traj.controls());
    assert_eq!(table.column("R_t").unwrap(), traj.control_variances());
    assert_eq!(table.column("time").unwrap(), traj.times());
    let re01 = table.column("rho_0_1_re").unwrap();
    let im01 = table.column("rho_0_1_im").unwrap();
    for (k, s) in traj.steps.iter().enumerate() {
        let z = s.state.values()[2];
        assert_eq!((re01[k], im01[k]), (z.re, z.im));
    }
}

#[test]
fn run_writes_plots_and_summary() {
    let cfg = parse_scenario(MINIMAL).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let outcome = run(&cfg, &RunOptions::writing_to(dir.path())).unwrap();
    let names: Vec<String> = outcome
        .files
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    for expected in ["tiny.csv", "tiny-output.svg", "tiny-control.svg", "tiny-summary.toml"] {
        assert!(names.iter().any(|n| n == expected), "{names:?}");
    }
    let svg = std::fs::read_to_string(dir.path().join("tiny-output.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains(r#"<line id="reference" data-value="1""#));
    assert!(svg.contains(r#"data-points="13""#));
    let control = std::fs::read_to_string(dir.path().join("tiny-control.svg")).unwrap();
    assert!(!control.contains("id=\"reference\""));
    let summary: toml::Value =
        toml::from_str(&std::fs::read_to_string(dir.path().join("tiny-summary.toml")).unwrap()).unwrap();
    assert_eq!(summary["steps"].as_integer(), Some(12));
    assert!(outcome.summary.passed());
}

#[test]
fn output_directory_precedence() {
    let cfg = parse_scenario(&format!("{MINIMAL}\n[output]\ndirectory = \"from-config\"\n")).unwrap();
    let env_dir = tempfile::tempdir().unwrap();
    std::env::set_var(OUTPUT_DIR_ENV, env_dir.path());
    let opts = RunOptions {
        write: true,
        ..Default::default()
    };
    assert_eq!(opts.resolve_dir(&cfg), env_dir.path());
    let outcome = run(&cfg, &opts).unwrap();
    assert!(outcome.files.iter().all(|f| f.starts_with(env_dir.path())));
    assert!(env_dir.path().join("tiny.csv").exists());
    let explicit = RunOptions::writing_to("explicit");
    assert_eq!(explicit.resolve_dir(&cfg), std::path::Path::new("explicit"));
    std::env::remove_var(OUTPUT_DIR_ENV);
    assert_eq!(opts.resolve_dir(&cfg), std::path::Path::new("from-config"));
}

#[test]
fn in_memory_runs_write_nothing() {
    let cfg = parse_scenario(MINIMAL).unwrap();
    let outcome = run(&cfg, &RunOptions::in_memory()).unwrap();
    assert!(outcome.files.is_empty());
    assert_eq!(outcome.trajectory.len(), 12);
}
