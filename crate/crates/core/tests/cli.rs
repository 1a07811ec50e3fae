mod common;

use std::process::{Command, Output};

fn netcentric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netcentric")).args(args).output().expect("binary runs")
}

fn table3() -> String {
    common::fixture("table3.scn").display().to_string()
}

#[test]
fn table3_writes_csv_to_stdout() {
    let out = netcentric(&["table3", "--scenario", &table3()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.contains("\n5mi,5,20,3500,tram_bus,25,4000,3900,3800,3700,3600,3550,3525\n"));
    assert!(text.contains("\n6000mi,6000,840,1300,long_haul_air,2340,N/A,N/A,N/A,7580,4440,2870,2085\n"));
}

#[test]
fn emitted_numbers_reparse_to_library_values() {
    use netcentric::report::cost_grid;
    let s = netcentric::scenario::parse_scenario(table3()).unwrap();
    let grid = cost_grid(&s.residences, &s.ncf_grid, &s.cost_params);
    let out = netcentric(&["table3", "--scenario", &table3()]);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    for (rec, row) in reader.records().map(Result::unwrap).zip(&grid.rows) {
        assert_eq!(rec[1].parse::<f64>().unwrap(), row.distance);
        assert_eq!(rec[2].parse::<f64>().unwrap(), row.one_way_time);
        assert_eq!(rec[3].parse::<i64>().unwrap(), row.housing.round_dollars());
        assert_eq!(rec[5].parse::<i64>().unwrap(), row.trip_cost.round_dollars());
        for (field, cell) in rec.iter().skip(6).zip(&row.cells) {
            assert_eq!(field.parse::<i64>().ok(), cell.map(|c| c.round_dollars()));
        }
    }
}

#[test]
fn ledger_flag_lists_the_deviations() {
    let out = netcentric(&["table3", "--ledger", "--scenario", &table3()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), netcentric::reference::deviation_ledger().to_csv());
}

#[test]
fn budget_example() {
    let out = netcentric(&["budget", "--scenario", &table3(), "--row", "40mi", "--ncf", "0.8"]);
    assert!(out.status.success());
    assert_eq!(out.stdout, b"1600\n");
    let out = netcentric(&["budget", "--scenario", &table3(), "--row", "40mi", "--ncf", "0.8", "--baseline", "relocation"]);
    assert_eq!(out.stdout, b"1320\n");
}

#[test]
fn simulate_is_byte_identical_across_runs() {
    let a = netcentric(&["simulate", "--seed", "42"]);
    let b = netcentric(&["simulate", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = netcentric(&["simulate", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn simulate_writes_trace_billing_and_out_files() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.txt");
    let billing = dir.path().join("billing.csv");
    let report = dir.path().join("report.csv");
    let scn = common::fixture("sim.scn").display().to_string();
    let out = netcentric(&[
        "simulate",
        "--scenario",
        &scn,
        "--trace",
        trace.to_str().unwrap(),
        "--billing",
        billing.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let report = std::fs::read_to_string(report).unwrap();
    assert!(report.starts_with("section,name,field,value\nsummary,,architecture,cdn\n"));
    let trace = std::fs::read_to_string(trace).unwrap();
    assert!(trace.lines().next().unwrap().split(',').count() == 4);
    let billing = std::fs::read_to_string(billing).unwrap();
    assert!(billing.starts_with("session,cycle,payer,payee,amount,sla_violated\n"));
}

#[test]
fn curves_are_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).display().to_string();
    for (kind, name) in [("cost", "a.svg"), ("cost", "b.svg"), ("gain", "c.svg")] {
        let out = netcentric(&["curves", "--scenario", &table3(), "--kind", kind, "--format", "svg", "--out", &path(name)]);
        assert!(out.status.success());
    }
    let a = std::fs::read(path("a.svg")).unwrap();
    assert_eq!(a, std::fs::read(path("b.svg")).unwrap());
    assert!(a.starts_with(b"<svg"));
    assert_ne!(a, std::fs::read(path("c.svg")).unwrap());
}

#[test]
fn compare_reports_platform_counts() {
    let out = netcentric(&["compare", "--scenario", &common::fixture("sim.scn").display().to_string()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("metric,cdn,walled_garden\nplatforms,1,3\n"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(netcentric(&["nope"]).status.code(), Some(1));
    assert_eq!(netcentric(&["table3", "--nope"]).status.code(), Some(1));
    assert_eq!(netcentric(&["budget", "--scenario", &table3(), "--row", "7mi", "--ncf", "0.5"]).status.code(), Some(1));
    assert_eq!(netcentric(&["budget", "--scenario", &table3(), "--row", "40mi", "--ncf", "1.5"]).status.code(), Some(1));
    assert_eq!(netcentric(&["table3", "--scenario", "/definitely/missing.scn"]).status.code(), Some(2));
    assert_eq!(netcentric(&["table3", "--scenario", &table3(), "--out", "/definitely/missing/x.csv"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scn");
    std::fs::write(&bad, "[grid]\nncf = 0.4, 0.2\n[residence]\nlabel = x\n").unwrap();
    let out = netcentric(&["table3", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let empty = dir.path().join("empty.scn");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(netcentric(&["table3", "--scenario", empty.to_str().unwrap()]).status.code(), Some(1));
}
