//! C interface to the `dualnet` core.
//!
//! Every function returns a [`DnStatus`]; results are written through out
//! pointers. Handles are opaque and must be released with the matching
//! `dn_*_free`. Strings returned by the library are released with
//! [`dn_string_free`]. After a non-`DN_OK` status, [`dn_last_error`] gives a
//! message for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Duration;

use dualnet::elim::{buchberger_with, GbOptions, GroebnerBasis};
use dualnet::poly::{parse_poly, MultiPoly, OrderKind, PolyRing};
use dualnet::scalar::{PrimeField, Rationals};
use dualnet::verify::{verify_alt4, verify_c2c4, verify_c3c3, Alt4Options, C3c3Part, SeedChoice};
use dualnet::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    RingMismatch = 5,
    Budget = 6,
    Arithmetic = 7,
    OutOfRange = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DnOrder {
    Lex = 0,
    DegRevLex = 1,
}

enum AnyRing {
    Q(Arc<PolyRing<Rationals>>),
    P(Arc<PolyRing<PrimeField>>),
}

enum AnyPoly {
    Q(MultiPoly<Rationals>),
    P(MultiPoly<PrimeField>),
}

enum AnyBasis {
    Q(GroebnerBasis<Rationals>),
    P(GroebnerBasis<PrimeField>),
}

/// A polynomial ring over Q or a prime field.
pub struct DnRing(AnyRing);

pub struct DnPoly(AnyPoly);

/// A reduced Gröbner basis.
pub struct DnBasis(AnyBasis);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> DnStatus {
    match e {
        Error::Parse { .. } => DnStatus::Parse,
        Error::RingMismatch => DnStatus::RingMismatch,
        Error::BudgetExceeded { .. } => DnStatus::Budget,
        Error::DivisionByZero | Error::NotDivisible | Error::BadPrime(_) => DnStatus::Arithmetic,
        _ => DnStatus::InvalidArgument,
    }
}

fn fail(e: Error) -> DnStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn guard(f: impl FnOnce() -> Result<(), DnStatus>) -> DnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            DnStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            DnStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, DnStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(DnStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        DnStatus::InvalidUtf8
    })
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, DnStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        DnStatus::NullPointer
    })
}

fn out_arg<T>(out: *mut T) -> Result<(), DnStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(DnStatus::NullPointer);
    }
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message for the last failed call on this thread. Owned by the library;
/// valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn split_vars(vars: &str) -> Vec<&str> {
    vars.split(',').map(str::trim).filter(|v| !v.is_empty()).collect()
}

/// Creates a ring with comma-separated variables, largest first. `modulus`
/// 0 means the rationals, otherwise a prime.
///
/// # Safety
/// `vars` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dn_ring_new(
    vars: *const c_char,
    order: DnOrder,
    modulus: u64,
    out: *mut *mut DnRing,
) -> DnStatus {
    guard(|| {
        out_arg(out)?;
        let vars = split_vars(str_arg(vars)?);
        let kind = match order {
            DnOrder::Lex => OrderKind::Lex,
            DnOrder::DegRevLex => OrderKind::DegRevLex,
        };
        let ring = if modulus == 0 {
            AnyRing::Q(PolyRing::new(Rationals, &vars, kind).map_err(fail)?)
        } else {
            let field = PrimeField::new(modulus).map_err(fail)?;
            AnyRing::P(PolyRing::new(field, &vars, kind).map_err(fail)?)
        };
        *out = Box::into_raw(Box::new(DnRing(ring)));
        Ok(())
    })
}

/// # Safety
/// `ring` must be null or a live handle from [`dn_ring_new`].
#[no_mangle]
pub unsafe extern "C" fn dn_ring_free(ring: *mut DnRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Parses a polynomial in `ring`.
///
/// # Safety
/// Pointers must be valid; `text` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn dn_poly_parse(ring: *const DnRing, text: *const c_char, out: *mut *mut DnPoly) -> DnStatus {
    guard(|| {
        out_arg(out)?;
        let ring = ref_arg(ring)?;
        let text = str_arg(text)?;
        let poly = match &ring.0 {
            AnyRing::Q(r) => AnyPoly::Q(parse_poly(r, text).map_err(fail)?),
            AnyRing::P(r) => AnyPoly::P(parse_poly(r, text).map_err(fail)?),
        };
        *out = Box::into_raw(Box::new(DnPoly(poly)));
        Ok(())
    })
}

/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dn_poly_free(poly: *mut DnPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Renders a polynomial; release the string with [`dn_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dn_poly_to_string(poly: *const DnPoly, out: *mut *mut c_char) -> DnStatus {
    guard(|| {
        out_arg(out)?;
        let s = match &ref_arg(poly)?.0 {
            AnyPoly::Q(p) => p.to_string(),
            AnyPoly::P(p) => p.to_string(),
        };
        *out = to_c_string(s);
        Ok(())
    })
}

/// Computes the reduced Gröbner basis of `n` polynomials under the ring's
/// order. `budget_ms` 0 means no budget; exceeding it gives `Budget`.
///
/// # Safety
/// `polys` must point to `n` live handles from the same ring.
#[no_mangle]
pub unsafe extern "C" fn dn_gb_compute(
    polys: *const *const DnPoly,
    n: usize,
    budget_ms: u64,
    out: *mut *mut DnBasis,
) -> DnStatus {
    guard(|| {
        out_arg(out)?;
        if polys.is_null() || n == 0 {
            set_error("empty input system");
            return Err(DnStatus::InvalidArgument);
        }
        let handles: Vec<&DnPoly> = std::slice::from_raw_parts(polys, n)
            .iter()
            .map(|&p| ref_arg(p))
            .collect::<Result<_, _>>()?;
        let opts = GbOptions {
            budget: (budget_ms > 0).then(|| Duration::from_millis(budget_ms)),
            ..GbOptions::default()
        };
        let mismatch = || {
            set_error("polynomials belong to different rings");
            DnStatus::RingMismatch
        };
        let basis = match &handles[0].0 {
            AnyPoly::Q(first) => {
                let ps: Vec<_> = handles
                    .iter()
                    .map(|h| match &h.0 {
                        AnyPoly::Q(p) => Ok(p.clone()),
                        AnyPoly::P(_) => Err(mismatch()),
                    })
                    .collect::<Result<_, _>>()?;
                AnyBasis::Q(buchberger_with(&ps, first.ring().order(), &opts).map_err(fail)?)
            }
            AnyPoly::P(first) => {
                let ps: Vec<_> = handles
                    .iter()
                    .map(|h| match &h.0 {
                        AnyPoly::P(p) => Ok(p.clone()),
                        AnyPoly::Q(_) => Err(mismatch()),
                    })
                    .collect::<Result<_, _>>()?;
                AnyBasis::P(buchberger_with(&ps, first.ring().order(), &opts).map_err(fail)?)
            }
        };
        *out = Box::into_raw(Box::new(DnBasis(basis)));
        Ok(())
    })
}

/// # Safety
/// `basis` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dn_basis_free(basis: *mut DnBasis) {
    if !basis.is_null() {
        drop(Box::from_raw(basis));
    }
}

/// Number of generators.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dn_basis_len(basis: *const DnBasis, out: *mut usize) -> DnStatus {
    guard(|| {
        out_arg(out)?;
        *out = match &ref_arg(basis)?.0 {
            AnyBasis::Q(g) => g.generators().len(),
            AnyBasis::P(g) => g.generators().len(),
        };
        Ok(())
    })
}

/// Copies generator `index` into a new polynomial handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dn_basis_generator(basis: *const DnBasis, index: usize, out: *mut *mut DnPoly) -> DnStatus {
    guard(|| {
        out_arg(out)?;
        let poly = match &ref_arg(basis)?.0 {
            AnyBasis::Q(g) => g.generators().get(index).cloned().map(AnyPoly::Q),
            AnyBasis::P(g) => g.generators().get(index).cloned().map(AnyPoly::P),
        };
        let Some(poly) = poly else {
            set_error(format!("generator index {index} out of range"));
            return Err(DnStatus::OutOfRange);
        };
        *out = Box::into_raw(Box::new(DnPoly(poly)));
        Ok(())
    })
}

/// Ideal membership: writes 1 if `poly` lies in the ideal, else 0.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dn_basis_contains(basis: *const DnBasis, poly: *const DnPoly, out: *mut i32) -> DnStatus {
    guard(|| {
        out_arg(out)?;
        let member = match (&ref_arg(basis)?.0, &ref_arg(poly)?.0) {
            (AnyBasis::Q(g), AnyPoly::Q(p)) => g.contains(p),
            (AnyBasis::P(g), AnyPoly::P(p)) => g.contains(p),
            _ => Err(Error::RingMismatch),
        }
        .map_err(fail)?;
        *out = member as i32;
        Ok(())
    })
}

/// Runs a verification task and writes its JSON report. `task` is
/// `c3c3`, `c3c3:uv`, `c3c3:ab`, `c3c3:theorem`, `c2c4`, `c2c4:literal` or
/// `alt4:p1,p2,...`. `exit_code` receives the CLI exit code (0 pass, 1
/// failure, 3 budget exceeded).
///
/// # Safety
/// Pointers must be valid; `task` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn dn_verify(task: *const c_char, json: *mut *mut c_char, exit_code: *mut i32) -> DnStatus {
    guard(|| {
        out_arg(json)?;
        out_arg(exit_code)?;
        let task = str_arg(task)?;
        let (name, arg) = task.split_once(':').unwrap_or((task, ""));
        let bad = |msg: String| {
            set_error(msg);
            DnStatus::InvalidArgument
        };
        let report = match name {
            "c3c3" => {
                let part: C3c3Part = if arg.is_empty() { C3c3Part::All } else { arg.parse().map_err(fail)? };
                verify_c3c3(part)
            }
            "c2c4" => match arg {
                "" | "corrected" => verify_c2c4(&SeedChoice::Corrected),
                "literal" => verify_c2c4(&SeedChoice::Literal),
                other => return Err(bad(format!("unknown seed `{other}`"))),
            },
            "alt4" => {
                let mut opts = Alt4Options::default();
                if !arg.is_empty() {
                    opts.primes = arg
                        .split(',')
                        .map(|p| p.trim().parse::<u64>().map_err(|_| bad(format!("bad prime `{p}`"))))
                        .collect::<Result<_, _>>()?;
                    opts.quorum = opts.quorum.min(opts.primes.len());
                }
                verify_alt4(&opts)
            }
            other => return Err(bad(format!("unknown task `{other}`"))),
        }
        .map_err(fail)?;
        *exit_code = report.exit_code();
        *json = to_c_string(report.to_json());
        Ok(())
    })
}
