use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use casimir_cli::{presets, RunConfig, CSV_HEADER};

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("casimir-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn rows(stdout: &[u8]) -> Vec<Vec<String>> {
    String::from_utf8(stdout.to_vec())
        .unwrap()
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn list_presets() {
    let out = casimir(&["--list-presets"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("fig2"));
    assert!(text.contains("boyer-pair"));
    assert!(text.lines().count() >= 12);
}

#[test]
fn graphene_pair_preset() {
    let out = casimir(&["--preset", "graphene-pair"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    let rows = rows(&out.stdout);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "");
    let ratio: f64 = rows[0][1].parse().unwrap();
    assert!((ratio - 0.00538).abs() < 5e-5);
    assert!(!out.stderr.is_empty());
}

#[test]
fn boyer_pair_preset() {
    let out = casimir(&["--preset", "boyer-pair", "--method", "quadrature"]);
    assert!(out.status.success());
    let rows = rows(&out.stdout);
    assert_eq!(rows.len(), 1);
    let ratio: f64 = rows[0][1].parse().unwrap();
    assert!((ratio + 0.875).abs() < 1e-6);
    assert_eq!(rows[0][4], "quadrature");
}

#[test]
fn config_file_sweep_to_output() {
    let config = scratch("sweep.conf");
    let csv = scratch("sweep.csv");
    fs::write(
        &config,
        "# middle magnetic plate\nplate = sigma *\nplate = pm\nplate = sigma *\nshared_sigma = true\nsweep = log 0.01 1000 5\n",
    )
    .unwrap();
    let out = casimir(&["--config", config.to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let written = fs::read(&csv).unwrap();
    let rows = rows(&written);
    assert_eq!(rows.len(), 5);
    for row in &rows {
        assert!(row[1].parse::<f64>().unwrap() < 0.0);
    }
}

#[test]
fn csv_is_byte_identical_across_runs() {
    let a = casimir(&["--preset", "fig3-edge"]);
    let b = casimir(&["--preset", "fig3-edge"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_round_trip() {
    for preset in presets::all() {
        for c in preset.stacks {
            assert_eq!(RunConfig::parse(&c.to_text()).unwrap(), c);
        }
    }
    let text = "name = mixed\nplate = delta 1.5 0.25\nplate = transparent\nplate = sigma 0.3\ngaps = 0.5 2\nmethod = quadrature\nrel_tol = 1e-7\nabs_tol = 1e-11\noutput = x.csv\n";
    let c = RunConfig::parse(text).unwrap();
    let written = c.to_text();
    assert_eq!(RunConfig::parse(&written).unwrap(), c);
    assert_eq!(RunConfig::parse(&written).unwrap().to_text(), written);
    assert!(written.contains("abs_tol = 1e-11"));
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.conf");
    fs::write(&bad, "plate = pe\nplate = unobtainium\n").unwrap();
    let out = casimir(&["--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    assert_eq!(casimir(&["--preset", "no-such-preset"]).status.code(), Some(2));
    assert_eq!(casimir(&["--preset", "graphene-pair", "--method", "ideal"]).status.code(), Some(2));
    assert_eq!(casimir(&["--preset", "graphene-pair", "--rel-tol", "-1"]).status.code(), Some(2));

    // generic plates with uneven gaps have no polylog form
    let uneven = scratch("uneven.conf");
    fs::write(&uneven, "plate = pe\nplate = graphene\nplate = pe\ngaps = 1 2\nmethod = polylog\n").unwrap();
    assert_eq!(casimir(&["--config", uneven.to_str().unwrap()]).status.code(), Some(3));

    let missing = scratch("missing.conf");
    assert_eq!(casimir(&["--config", missing.to_str().unwrap()]).status.code(), Some(4));
    let unwritable = scratch("no-dir").join("sub").join("out.csv");
    assert_eq!(
        casimir(&["--preset", "graphene-pair", "--output", unwritable.to_str().unwrap()]).status.code(),
        Some(4)
    );
}

#[test]
fn presets_run_within_budget() {
    for name in ["graphene-stack-6", "fig2", "fig6-middle", "ideal-asymptotes"] {
        let start = Instant::now();
        let out = casimir(&["--preset", name]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(start.elapsed() < Duration::from_secs(30), "{name} too slow");
    }
}
