use std::process::{Command, Output};

use moutard::{CollisionEvent, Complex64, RootTrajectory};
use moutard_cli::{export_trajectory, read_trajectory_csv, read_trajectory_json, Format};
use proptest::prelude::*;

fn moutard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moutard")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn verify_two_deltas() {
    let out = moutard(&["verify", "--roots", "1;-1", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"][0]["name"], "identity");
    assert!(v["checks"][0]["value"].as_f64().unwrap() < 1e-12);
    assert!((v["scattering"]["a"]["re"].as_f64().unwrap() + 2.0).abs() < 1e-9);
    assert_eq!(v["scattering"]["count"], 2);
}

#[test]
fn eigen_of_the_free_operator() {
    let out = moutard(&["eigen", "--roots", "", "--lambda", "1", "--z", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["points"][0]["psi"]["re"], 1.0);
    assert_eq!(v["points"][0]["psi"]["im"], 0.0);
}

#[test]
fn coefficient_and_root_input_agree() {
    let a = moutard(&["eigen", "--roots", "1,0;-1,0", "--lambda", "1+i", "--z", "0.5i 2"]);
    let b = moutard(&["eigen", "--coeffs", "-1;0;1", "--lambda", "1,1", "--z", "0,0.5; 2"]);
    assert_eq!(a.status.code(), Some(0));
    let (va, vb) = (json(&a), json(&b));
    for k in 0..2 {
        let pa = &va["points"][k]["psi"];
        let pb = &vb["points"][k]["psi"];
        assert!((pa["re"].as_f64().unwrap() - pb["re"].as_f64().unwrap()).abs() < 1e-12);
        assert!((pa["im"].as_f64().unwrap() - pb["im"].as_f64().unwrap()).abs() < 1e-12);
    }
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        vec!["verify", "--roots", "1"],
        vec!["verify", "--roots", "1", "--lambda", "0"],
        vec!["eigen", "--roots", "1", "--coeffs", "1", "--lambda", "1", "--z", "0"],
        vec!["scatter", "--coeffs", "1;2", "--lambda", "1"],
        vec!["evolve", "--roots", "1", "--t0", "1", "--t1", "0"],
        vec!["evolve", "--roots", "", "--t1", "1"],
        vec!["scatter", "--roots", "3", "--lambda", "1", "--radius", "4"],
        vec!["evolve", "--roots", "x"],
        vec!["evolve", "--roots", "1", "--flow-sign", "0"],
        vec!["nonsense"],
    ] {
        let out = moutard(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn numerical_failures_exit_one_with_a_record() {
    let out = moutard(&["eigen", "--roots", "1", "--lambda", "1", "--z", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "NearPole");

    // two steps cannot follow the cubic's roots unambiguously
    let out = moutard(&["evolve", "--roots", "2 -1 0.5i", "--t1", "40", "--steps", "2", "--tol", "1e-9"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "AmbiguousMatching");
    assert_eq!(v["error"]["command"], "evolve");
}

#[test]
fn evolve_csv_has_one_event_for_the_cube() {
    let out = moutard(&["evolve", "--roots", "0 0 0", "--t0", "-1", "--t1", "1", "--steps", "400", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t,re_root_1,im_root_1,re_root_2,im_root_2,re_root_3,im_root_3\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("#event")).count(), 1);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 402);
    let rt = read_trajectory_csv(&text).unwrap();
    assert_eq!(rt.events[0].roots_involved, vec![0, 1, 2]);
}

#[test]
fn flow_sign_reverses_time() {
    let plus = moutard(&["potential", "--roots", "0 0 0", "--t0", "0.5"]);
    let minus = moutard(&["potential", "--roots", "0 0 0", "--t0", "-0.5", "--flow-sign", "-1"]);
    assert_eq!(json(&plus)["centers"], json(&minus)["centers"]);
    assert_eq!(json(&plus)["centers"].as_array().unwrap().len(), 3);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.json");
    let out = moutard(&["evolve", "--roots", "1 -1 2i", "--steps", "20", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rt = read_trajectory_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rt.times.len(), 21);
    assert_eq!(rt.paths.len(), 3);
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["verify", "--roots", "1;-1;0.5+i", "--lambda", "0.5i", "--format", "csv"],
        vec!["scatter", "--roots", "1;-1;0.5+i", "--lambda", "-3i"],
        vec!["evolve", "--roots", "1;-1;0.5+i;2", "--steps", "50", "--format", "csv"],
    ] {
        let (a, b) = (moutard(&args), moutard(&args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

fn finite() -> impl Strategy<Value = f64> {
    prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO
}

fn trajectories() -> impl Strategy<Value = RootTrajectory> {
    (1usize..4, 1usize..6).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(finite(), m),
            prop::collection::vec(prop::collection::vec((finite(), finite()), m), n),
            prop::collection::vec((finite(), finite(), prop::collection::vec(0..n, 0..=n)), 0..3),
        )
            .prop_map(|(times, paths, events)| RootTrajectory {
                times,
                paths: paths
                    .into_iter()
                    .map(|p| p.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
                    .collect(),
                events: events
                    .into_iter()
                    .map(|(t_approx, min_separation, roots_involved)| CollisionEvent {
                        t_approx,
                        roots_involved,
                        min_separation,
                    })
                    .collect(),
            })
    })
}

fn bits(rt: &RootTrajectory) -> (Vec<u64>, Vec<(u64, u64)>, Vec<(u64, u64, Vec<usize>)>) {
    (
        rt.times.iter().map(|t| t.to_bits()).collect(),
        rt.paths.iter().flatten().map(|z| (z.re.to_bits(), z.im.to_bits())).collect(),
        rt.events
            .iter()
            .map(|e| (e.t_approx.to_bits(), e.min_separation.to_bits(), e.roots_involved.clone()))
            .collect(),
    )
}

proptest! {
    #[test]
    fn json_round_trip_is_bit_exact(rt in trajectories()) {
        let mut buf = Vec::new();
        export_trajectory(&rt, Format::Json, &mut buf).unwrap();
        let back = read_trajectory_json(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(bits(&back), bits(&rt));
    }

    #[test]
    fn csv_round_trip_is_bit_exact(rt in trajectories()) {
        let mut buf = Vec::new();
        export_trajectory(&rt, Format::Csv, &mut buf).unwrap();
        let back = read_trajectory_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
        prop_assert_eq!(bits(&back), bits(&rt));
    }
}
