use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use polymut_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn polytope(json: &str) -> *mut PmPolytope {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pm_polytope_from_json(c(json).as_ptr(), &mut p) }, PM_OK);
    p
}

fn to_json(p: *const PmPolytope) -> String {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(pm_polytope_to_json(p, &mut s), PM_OK);
        let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
        pm_string_free(s);
        out
    }
}

const P: &str = r#"{"dim":2,"vertices":[["1","1"],["0","1"],["-1","-1"],["0","-1"]]}"#;
const TRIANGLE: &str = r#"{"dim":2,"vertices":[["0","1"],["-1","-1"],["1","-1"]]}"#;
const DATUM: &str = r#"{"w":[0,-1],"F":{"dim":2,"vertices":[["0","0"],["1","0"]]}}"#;

#[test]
fn worked_example_through_handles() {
    unsafe {
        let p = polytope(P);
        let want = polytope(TRIANGLE);
        let mut d = ptr::null_mut();
        assert_eq!(pm_datum_from_json(c(DATUM).as_ptr(), &mut d), PM_OK);

        let mut m = ptr::null_mut();
        assert_eq!(pm_mutate_n(d, p, &mut m), PM_OK);
        let mut eq = 0;
        assert_eq!(pm_polytope_equal(m, want, &mut eq), PM_OK);
        assert_eq!(eq, 1);

        // φ(P*) = mut(P)*
        let (mut pd, mut img, mut md) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(pm_polytope_polar(p, &mut pd), PM_OK);
        assert_eq!(pm_mutate_m(d, pd, &mut img), PM_OK);
        assert_eq!(pm_polytope_polar(m, &mut md), PM_OK);
        assert_eq!(to_json(img), to_json(md));
        assert_eq!(pm_polytope_vertex_count(img), 3);

        for h in [p, want, m, pd, img, md] {
            pm_polytope_free(h);
        }
        pm_datum_free(d);
    }
}

#[test]
fn generators_and_counts() {
    unsafe {
        let mut gt = ptr::null_mut();
        assert_eq!(
            pm_polytope_generate(c("gt-a").as_ptr(), 2, c("2,2").as_ptr(), &mut gt),
            PM_OK
        );
        assert_eq!(pm_polytope_dim(gt), 3);
        let mut n = 0u64;
        assert_eq!(pm_polytope_lattice_points(gt, 1, &mut n), PM_OK);
        assert_eq!(n, 27);
        assert_eq!(pm_polytope_interior_points(gt, &mut n), PM_OK);
        assert_eq!(n, 1);
        let mut dual = ptr::null_mut();
        assert_eq!(pm_polytope_dual_at(gt, [3, 2, 1].as_ptr(), 3, &mut dual), PM_OK);
        assert!(to_json(dual).contains("\"dim\":3"));
        pm_polytope_free(dual);
        pm_polytope_free(gt);
    }
}

#[test]
fn seed_mutation_roundtrip() {
    let seed = r#"{"J":[1,2,3,4,5,6],"J_uf":[1,2,3],
        "epsilon":[[0,-1,1,0,0,0],[1,0,-1,-1,1,0],[-1,1,0,0,-1,1]]}"#;
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(pm_seed_from_json(c(seed).as_ptr(), &mut s), PM_OK);
        let mut body = ptr::null_mut();
        assert_eq!(
            pm_polytope_generate(c("sl4-nobody").as_ptr(), 0, c("2,2,2").as_ptr(), &mut body),
            PM_OK
        );
        let (mut s1, mut b1) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(pm_seed_mutate(s, 2, body, &mut s1, &mut b1), PM_OK);
        let (mut s2, mut b2) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(pm_seed_mutate(s1, 2, b1, &mut s2, &mut b2), PM_OK);
        let mut eq = 0;
        assert_eq!(pm_polytope_equal(body, b2, &mut eq), PM_OK);
        assert_eq!(eq, 1);

        let mut js = ptr::null_mut();
        assert_eq!(pm_seed_to_json(s1, &mut js), PM_OK);
        assert!(CStr::from_ptr(js).to_str().unwrap().contains("\"J_uf\":[1,2,3]"));
        pm_string_free(js);

        for x in [s, s1, s2] {
            pm_seed_free(x);
        }
        for x in [body, b1, b2] {
            pm_polytope_free(x);
        }
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(pm_polytope_from_json(c("{").as_ptr(), &mut p), PM_ERR_PARSE);
        assert!(p.is_null());
        assert!(!pm_last_error().is_null());

        assert_eq!(pm_polytope_from_json(ptr::null(), &mut p), PM_ERR_NULL);
        assert_eq!(pm_polytope_polar(ptr::null(), &mut p), PM_ERR_NULL);

        let shifted = polytope(r#"{"dim":1,"vertices":[["1"],["2"]]}"#);
        assert_eq!(pm_polytope_polar(shifted, &mut p), PM_ERR_NOT_INTERIOR);
        let msg = CStr::from_ptr(pm_last_error()).to_str().unwrap();
        assert!(msg.contains("interior"), "{msg}");

        let big = r#"{"w":[0,-1],"F":{"dim":2,"vertices":[["0","0"],["3","0"]]}}"#;
        let mut d = ptr::null_mut();
        assert_eq!(pm_datum_from_json(c(big).as_ptr(), &mut d), PM_OK);
        let q = polytope(P);
        assert_eq!(pm_mutate_n(d, q, &mut p), PM_ERR_NOT_WELL_DEFINED);

        pm_datum_free(d);
        pm_polytope_free(q);
        pm_polytope_free(shifted);
        pm_polytope_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/polymut.h");
    let text = std::fs::read_to_string(&header).expect("generated header");
    for name in [
        "pm_last_error",
        "pm_polytope_from_json",
        "pm_mutate_n",
        "pm_seed_mutate",
        "typedef struct PmPolytope PmPolytope",
        "#define PM_ERR_NON_CONVEX -6",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    // a C compiler is optional in the build environment
    if let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .output()
    {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
