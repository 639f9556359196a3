use std::ffi::{CStr, CString};
use std::ptr;

use dualnet_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dn_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn ring(vars: &str, order: DnOrder, modulus: u64) -> *mut DnRing {
    let mut r = ptr::null_mut();
    assert_eq!(dn_ring_new(c(vars).as_ptr(), order, modulus, &mut r), DnStatus::Ok);
    r
}

unsafe fn poly(r: *const DnRing, text: &str) -> *mut DnPoly {
    let mut p = ptr::null_mut();
    assert_eq!(dn_poly_parse(r, c(text).as_ptr(), &mut p), DnStatus::Ok, "{}", last_error());
    p
}

unsafe fn render(p: *const DnPoly) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(dn_poly_to_string(p, &mut s), DnStatus::Ok);
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    dn_string_free(s);
    out
}

#[test]
fn textbook_basis_over_q() {
    unsafe {
        let r = ring("x, y", DnOrder::Lex, 0);
        let f = [poly(r, "x^2 - 1"), poly(r, "x*y - 1")];
        let mut b = ptr::null_mut();
        assert_eq!(dn_gb_compute(f.as_ptr() as *const *const DnPoly, 2, 0, &mut b), DnStatus::Ok);
        let mut n = 0usize;
        assert_eq!(dn_basis_len(b, &mut n), DnStatus::Ok);
        assert_eq!(n, 2);
        let mut gens = Vec::new();
        for i in 0..n {
            let mut g = ptr::null_mut();
            assert_eq!(dn_basis_generator(b, i, &mut g), DnStatus::Ok);
            gens.push(render(g));
            dn_poly_free(g);
        }
        gens.sort();
        assert_eq!(gens, ["x - y", "y^2 - 1"]);

        let member = poly(r, "x*y^3 - 1");
        let mut yes = -1;
        assert_eq!(dn_basis_contains(b, member, &mut yes), DnStatus::Ok);
        assert_eq!(yes, 1);
        let other = poly(r, "x + 1");
        assert_eq!(dn_basis_contains(b, other, &mut yes), DnStatus::Ok);
        assert_eq!(yes, 0);

        let mut g = ptr::null_mut();
        assert_eq!(dn_basis_generator(b, 7, &mut g), DnStatus::OutOfRange);
        assert!(g.is_null());

        for p in f.into_iter().chain([member, other]) {
            dn_poly_free(p);
        }
        dn_basis_free(b);
        dn_ring_free(r);
    }
}

#[test]
fn prime_field_unit_ideal() {
    unsafe {
        let r = ring("x,y", DnOrder::DegRevLex, 7);
        let f = [poly(r, "x*y - 1"), poly(r, "x")];
        let mut b = ptr::null_mut();
        assert_eq!(dn_gb_compute(f.as_ptr() as *const *const DnPoly, 2, 0, &mut b), DnStatus::Ok);
        let one = poly(r, "1");
        let mut yes = 0;
        assert_eq!(dn_basis_contains(b, one, &mut yes), DnStatus::Ok);
        assert_eq!(yes, 1);
        dn_poly_free(one);
        for p in f {
            dn_poly_free(p);
        }
        dn_basis_free(b);
        dn_ring_free(r);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(dn_ring_new(ptr::null(), DnOrder::Lex, 0, &mut r), DnStatus::NullPointer);
        assert_eq!(dn_ring_new(c("x").as_ptr(), DnOrder::Lex, 12, &mut r), DnStatus::InvalidArgument);
        assert!(!last_error().is_empty());

        let q = ring("x,y", DnOrder::Lex, 0);
        let mut p = ptr::null_mut();
        assert_eq!(dn_poly_parse(q, c("x + * y").as_ptr(), &mut p), DnStatus::Parse);
        assert!(last_error().contains("parse"));
        assert_eq!(dn_poly_parse(q, c("z").as_ptr(), &mut p), DnStatus::Parse);
        let bad = [0xffu8, 0];
        assert_eq!(dn_poly_parse(q, bad.as_ptr() as *const _, &mut p), DnStatus::InvalidUtf8);
        assert_eq!(dn_poly_parse(q, c("x").as_ptr(), ptr::null_mut()), DnStatus::NullPointer);

        let m = ring("x,y", DnOrder::Lex, 101);
        let a = poly(q, "x");
        let b = poly(m, "y");
        let mixed = [a as *const DnPoly, b as *const DnPoly];
        let mut basis = ptr::null_mut();
        assert_eq!(dn_gb_compute(mixed.as_ptr(), 2, 0, &mut basis), DnStatus::RingMismatch);
        assert_eq!(dn_gb_compute(ptr::null(), 0, 0, &mut basis), DnStatus::InvalidArgument);

        let ok = poly(q, "x");
        assert_eq!(dn_poly_parse(q, c("y").as_ptr(), &mut p), DnStatus::Ok);
        assert!(last_error().is_empty());
        for h in [a, b, ok, p] {
            dn_poly_free(h);
        }
        dn_ring_free(q);
        dn_ring_free(m);
        dn_ring_free(ptr::null_mut());
        dn_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_reports_json() {
    unsafe {
        let mut json = ptr::null_mut();
        let mut code = -1;
        assert_eq!(dn_verify(c("c2c4").as_ptr(), &mut json, &mut code), DnStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        dn_string_free(json);
        assert_eq!(code, 0);
        assert!(text.contains("\"task\": \"c2c4\"") || text.contains("\"task\":\"c2c4\""), "{text}");
        assert!(text.contains("\"overall\""));

        assert_eq!(dn_verify(c("c2c4:literal").as_ptr(), &mut json, &mut code), DnStatus::Ok);
        dn_string_free(json);
        assert_eq!(code, 1);

        assert_eq!(dn_verify(c("c3c3:uv").as_ptr(), &mut json, &mut code), DnStatus::Ok);
        dn_string_free(json);
        assert_eq!(code, 0);

        assert_eq!(dn_verify(c("nope").as_ptr(), &mut json, &mut code), DnStatus::InvalidArgument);
        assert_eq!(dn_verify(c("c3c3:zz").as_ptr(), &mut json, &mut code), DnStatus::InvalidArgument);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/dualnet.h");
    let src = std::env::temp_dir().join(format!("dualnet_header_{}.c", std::process::id()));
    std::fs::write(&src, format!("#include \"{header}\"\nint main(void) {{ return DN_STATUS_OK; }}\n")).unwrap();
    let status = std::process::Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg(&src).status();
    let _ = std::fs::remove_file(&src);
    match status {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(e) => eprintln!("no C compiler available ({e}); header check skipped"),
    }
}
