//! Exercises the C entry points from Rust through raw pointers.

use std::ffi::{CStr, CString};
use std::ptr;

use semicross_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(sc_last_error()) }.to_str().unwrap().to_owned()
}

fn module(json: &str) -> *mut ScModule {
    let text = CString::new(json).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { sc_module_from_json(text.as_ptr(), &mut m) }, ScStatus::Ok, "{}", last_error());
    m
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(sc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn integer_module_round_trip() {
    let m = module(r#"{"domain": "Z", "free_rank": 1, "torsion": [6]}"#);
    unsafe {
        let mut dim = 0;
        assert_eq!(sc_module_dim(m, &mut dim), ScStatus::Ok);
        assert_eq!(dim, 2);
        let mut torsion = false;
        assert_eq!(sc_module_has_torsion(m, &mut torsion), ScStatus::Ok);
        assert!(torsion);

        let x = [3i64, 5];
        let mut y = [0i64; 2];
        assert_eq!(sc_module_scalar_action(m, 2, 0, x.as_ptr(), 2, y.as_mut_ptr()), ScStatus::Ok);
        assert_eq!(y, [6, 4]);

        let mut inj = true;
        assert_eq!(sc_module_action_injective(m, 2, 0, &mut inj), ScStatus::Ok);
        assert!(!inj);
        assert_eq!(sc_module_action_injective(m, 5, 0, &mut inj), ScStatus::Ok);
        assert!(inj);

        // Z has no i
        assert_eq!(sc_module_scalar_action(m, 0, 1, x.as_ptr(), 2, y.as_mut_ptr()), ScStatus::InvalidArgument);
        assert!(!last_error().is_empty());
        assert_eq!(sc_module_scalar_action(m, 1, 0, x.as_ptr(), 1, y.as_mut_ptr()), ScStatus::InvalidArgument);
        sc_module_free(m);
    }
}

#[test]
fn gaussian_module_rotation() {
    let m = module(r#"{"domain": "Zi", "free_rank": 2, "torsion": [], "i_action": [[0, -1], [1, 0]]}"#);
    unsafe {
        let x = [1i64, 0];
        let mut y = [0i64; 2];
        assert_eq!(sc_module_scalar_action(m, 0, 1, x.as_ptr(), 2, y.as_mut_ptr()), ScStatus::Ok);
        assert_eq!(y, [0, 1]);
        assert_eq!(sc_module_scalar_action(m, 1, 1, x.as_ptr(), 2, y.as_mut_ptr()), ScStatus::Ok);
        assert_eq!(y, [1, 1]);
        sc_module_free(m);
    }
}

#[test]
fn bad_module_input() {
    let mut m = ptr::null_mut();
    unsafe {
        let text = CString::new("{\"domain\": ").unwrap();
        assert_eq!(sc_module_from_json(text.as_ptr(), &mut m), ScStatus::ParseError);
        assert!(m.is_null());
        assert_eq!(sc_module_from_json(ptr::null(), &mut m), ScStatus::NullPointer);
        assert!(last_error().contains("json"));
        let mut dim = 0;
        assert_eq!(sc_module_dim(ptr::null(), &mut dim), ScStatus::NullPointer);
        sc_module_free(ptr::null_mut());
    }
}

#[test]
fn dynamics_handles() {
    unsafe {
        let sigma = [1usize, 0, 3, 2];
        let mut sys = ptr::null_mut();
        assert_eq!(sc_dynsys_new(sigma.as_ptr(), 4, &mut sys), ScStatus::Ok);
        let mut comps = 0;
        assert_eq!(sc_dynsys_component_count(sys, &mut comps), ScStatus::Ok);
        assert_eq!(comps, 2);

        let mut dim = 0;
        let chi0 = [1i64, 0, 0, 0];
        assert_eq!(sc_dynsys_cyclic_dimension(sys, chi0.as_ptr(), 4, &mut dim), ScStatus::Ok);
        assert_eq!(dim, 3);
        let wrong = [1i64, 2];
        assert_eq!(sc_dynsys_cyclic_dimension(sys, wrong.as_ptr(), 2, &mut dim), ScStatus::InvalidArgument);

        let (mut count, mut certified) = (0, false);
        assert_eq!(sc_dynsys_orbit_generators(sys, &mut count, &mut certified), ScStatus::Ok);
        assert!(certified);
        assert!(count <= comps);
        sc_dynsys_free(sys);

        let bad = [0usize, 7];
        let mut sys = ptr::null_mut();
        assert_eq!(sc_dynsys_new(bad.as_ptr(), 2, &mut sys), ScStatus::InvalidArgument);
        assert!(sys.is_null());
        assert_eq!(sc_dynsys_new(ptr::null(), 3, &mut sys), ScStatus::NullPointer);
    }
}

#[test]
fn scenario_reports() {
    let run = |json: &str, seed: Option<u64>| -> (ScStatus, Option<String>) {
        let text = CString::new(json).unwrap();
        let mut out = ptr::null_mut();
        let status = unsafe { sc_run_scenario_json(text.as_ptr(), seed.unwrap_or(0), seed.is_some(), &mut out) };
        let report = (!out.is_null()).then(|| {
            let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
            unsafe { sc_string_free(out) };
            s
        });
        (status, report)
    };

    let product = r#"{"kind": "product-decomp", "seed": 1, "module": {"domain": "Z", "free_rank": 0, "torsion": [5]}}"#;
    let (status, report) = run(product, Some(9));
    assert_eq!(status, ScStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&report.unwrap()).unwrap();
    assert_eq!(v["seed"], 9);
    assert_eq!(v["pass"], true);
    assert_eq!(run(product, Some(9)).1, run(product, Some(9)).1);

    let failing = r#"{"kind": "dynamics", "system": {"size": 3, "sigma": [0, 1, 2]}, "expect_cyclic": true}"#;
    let (status, report) = run(failing, None);
    assert_eq!(status, ScStatus::CheckFailed);
    assert!(report.unwrap().contains("\"pass\": false"));

    let (status, report) = run(r#"{"kind": "spectral-flow"}"#, None);
    assert_eq!(status, ScStatus::ParseError);
    assert!(report.is_none());
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/semicross.h")).unwrap();
    for name in [
        "sc_version",
        "sc_last_error",
        "sc_string_free",
        "sc_module_from_json",
        "sc_module_free",
        "sc_module_dim",
        "sc_module_has_torsion",
        "sc_module_scalar_action",
        "sc_module_action_injective",
        "sc_dynsys_new",
        "sc_dynsys_free",
        "sc_dynsys_component_count",
        "sc_dynsys_cyclic_dimension",
        "sc_dynsys_orbit_generators",
        "sc_run_scenario_json",
        "SC_STATUS_CHECK_FAILED",
        "typedef struct ScModule ScModule",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
