use std::ffi::{c_char, CStr};
use std::ptr;

use maxcurve_ffi::*;

fn field(p: u64, k: u32) -> *mut MaxcurveField {
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { maxcurve_field_create(p, k, &mut f) },
        MaxcurveStatus::Ok
    );
    f
}

#[test]
fn hurwitz_over_f169_through_handles() {
    unsafe {
        let f = field(13, 1);
        let mut q = 0;
        assert_eq!(maxcurve_field_q(f, &mut q), MaxcurveStatus::Ok);
        assert_eq!(q, 13);
        let mut c = ptr::null_mut();
        assert_eq!(maxcurve_curve_hurwitz(f, 3, &mut c), MaxcurveStatus::Ok);
        // the curve outlives the field handle
        maxcurve_field_free(f);
        let (mut deg, mut genus, mut count) = (0u32, 0u64, 0u64);
        assert_eq!(maxcurve_curve_degree(c, &mut deg), MaxcurveStatus::Ok);
        assert_eq!(maxcurve_curve_genus(c, &mut genus), MaxcurveStatus::Ok);
        assert_eq!(
            maxcurve_count_points(c, u64::MAX, &mut count),
            MaxcurveStatus::Ok
        );
        assert_eq!((deg, genus, count), (4, 3, 248));

        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(
            maxcurve_verdict_json(c, u64::MAX, &mut json),
            MaxcurveStatus::Ok
        );
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["observed"], 248);
        assert_eq!(v["maximal"], true);
        assert_eq!(v["criterion"], true);
        maxcurve_string_free(json);
        maxcurve_curve_free(c);
    }
}

#[test]
fn other_constructors() {
    unsafe {
        let f = field(2, 1);
        let mut count = 0;
        for make in [
            |f, out| maxcurve_curve_hermitian(f, out),
            |f, out| maxcurve_curve_fermat(f, 3, out),
            |f, out| maxcurve_curve_generalized(f, 2, 1, out),
        ]
            as [unsafe fn(*const MaxcurveField, *mut *mut MaxcurveCurve) -> MaxcurveStatus; 3]
        {
            let mut c = ptr::null_mut();
            assert_eq!(make(f, &mut c), MaxcurveStatus::Ok);
            assert_eq!(
                maxcurve_count_points(c, u64::MAX, &mut count),
                MaxcurveStatus::Ok
            );
            assert_eq!(count, 9);
            maxcurve_curve_free(c);
        }
        maxcurve_field_free(f);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(
            maxcurve_field_create(4, 1, &mut f),
            MaxcurveStatus::InvalidArgument
        );
        assert!(!last_error_string().is_empty());
        assert_eq!(
            maxcurve_field_create(2, 40, &mut f),
            MaxcurveStatus::BudgetExceeded
        );
        assert_eq!(
            maxcurve_field_create(2, 1, ptr::null_mut()),
            MaxcurveStatus::NullPointer
        );

        let f = field(3, 1);
        assert!(last_error_string().is_empty());
        let mut c = ptr::null_mut();
        assert_eq!(
            maxcurve_curve_hurwitz(f, 2, &mut c),
            MaxcurveStatus::CharacteristicDivides
        );
        assert!(c.is_null());
        assert_eq!(maxcurve_curve_hermitian(f, &mut c), MaxcurveStatus::Ok);
        let mut n = 0;
        assert_eq!(
            maxcurve_count_points(c, 80, &mut n),
            MaxcurveStatus::BudgetExceeded
        );
        assert!(last_error_string().contains("budget"));
        // zero selects the default budget
        assert_eq!(maxcurve_count_points(c, 0, &mut n), MaxcurveStatus::Ok);
        assert_eq!(n, 28);
        assert_eq!(
            maxcurve_count_points(ptr::null(), 80, &mut n),
            MaxcurveStatus::NullPointer
        );
        maxcurve_curve_free(c);
        maxcurve_field_free(f);
        maxcurve_curve_free(ptr::null_mut());
        maxcurve_field_free(ptr::null_mut());
        maxcurve_string_free(ptr::null_mut());
    }
}

#[test]
fn criteria() {
    let mut b = false;
    unsafe {
        assert_eq!(
            maxcurve_hurwitz_criterion(3, 13, 1, &mut b),
            MaxcurveStatus::Ok
        );
        assert!(b);
        assert_eq!(
            maxcurve_hurwitz_criterion(3, 5, 2, &mut b),
            MaxcurveStatus::Ok
        );
        assert!(!b);
        assert_eq!(
            maxcurve_hurwitz_criterion(2, 3, 1, &mut b),
            MaxcurveStatus::CharacteristicDivides
        );
        assert_eq!(
            maxcurve_fermat_criterion(7, 13, 1, &mut b),
            MaxcurveStatus::Ok
        );
        assert!(b);
        assert_eq!(
            maxcurve_fermat_criterion(7, 2, 1, &mut b),
            MaxcurveStatus::Ok
        );
        assert!(!b);
        assert_eq!(
            maxcurve_generalized_criterion(3, 2, 13, 1, &mut b),
            MaxcurveStatus::Ok
        );
        assert!(b);
        assert_eq!(
            maxcurve_generalized_criterion(4, 2, 13, 1, &mut b),
            MaxcurveStatus::InvalidArgument
        );
        assert_eq!(
            maxcurve_generalized_criterion(3, 2, 13, 1, ptr::null_mut()),
            MaxcurveStatus::NullPointer
        );
    }
}

const HEADER: &str = include_str!("../include/maxcurve.h");

#[test]
fn header_declares_the_abi() {
    for name in [
        "maxcurve_last_error",
        "maxcurve_field_create",
        "maxcurve_field_free",
        "maxcurve_field_q",
        "maxcurve_curve_hermitian",
        "maxcurve_curve_hurwitz",
        "maxcurve_curve_generalized",
        "maxcurve_curve_fermat",
        "maxcurve_curve_free",
        "maxcurve_curve_degree",
        "maxcurve_curve_genus",
        "maxcurve_count_points",
        "maxcurve_verdict_json",
        "maxcurve_string_free",
        "maxcurve_hurwitz_criterion",
        "maxcurve_fermat_criterion",
        "maxcurve_generalized_criterion",
    ] {
        assert!(
            HEADER.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(HEADER.contains("typedef struct MaxcurveField MaxcurveField;"));
    assert!(HEADER.contains("typedef struct MaxcurveCurve MaxcurveCurve;"));
    assert!(HEADER.contains("MAXCURVE_STATUS_OK = 0"));
    assert!(HEADER.contains("MAXCURVE_STATUS_INTERNAL = 6"));
}

#[test]
fn header_compiles_as_c() {
    let dir = tempdir();
    let src = dir.join("probe.c");
    std::fs::write(
        &src,
        "#include \"maxcurve.h\"\nint main(void) { MaxcurveField *f = 0; return maxcurve_field_create(2, 1, &f) == MAXCURVE_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = match std::process::Command::new("cc")
        .args([
            "-std=c99",
            "-Wall",
            "-Werror",
            "-fsyntax-only",
            "-I",
            include,
        ])
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler; skipping");
            return;
        }
    };
    assert!(status.success());
}

fn tempdir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("maxcurve-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
