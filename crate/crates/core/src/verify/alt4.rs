//! Modular ideal-membership check for the Alt4 system.

use std::time::Duration;

use rayon::prelude::*;

use crate::elim::{buchberger_with, Algorithm, GbOptions};
use crate::error::{Error, Result};
use crate::netcfg::{alt4_constraints, build_alt4, ALT4_EQUATION_COUNT, ALT4_PRINTED, ALT4_Y};
use crate::poly::{parse_poly, MultiPoly};
use crate::scalar::{is_prime, PrimeField, Rationals};

use super::{fail, info, verdict, Outcome, Status, VerificationReport};

pub const DEFAULT_PRIMES: [u64; 3] = [32003, 32009, 32027];

#[derive(Clone, Debug)]
pub struct Alt4Options {
    pub primes: Vec<u64>,
    /// Wall-clock budget per prime.
    pub budget: Option<Duration>,
    /// Number of primes that must pass.
    pub quorum: usize,
}

impl Default for Alt4Options {
    fn default() -> Self {
        Alt4Options { primes: DEFAULT_PRIMES.to_vec(), budget: Some(Duration::from_secs(3600)), quorum: 3 }
    }
}

fn run_prime(p: u64, eqs: &[MultiPoly<Rationals>], budget: Option<Duration>) -> Result<Outcome> {
    if p <= 12 || !is_prime(p) {
        return Err(Error::UnsupportedPrime(p, "expected a prime greater than 12"));
    }
    let field = PrimeField::new(p)?;
    let ring = eqs[0].ring().over(field);
    let mut modp = Vec::with_capacity(eqs.len());
    for e in eqs {
        let m = e.map_coefficients(&ring, |c| field.from_rational(c))?;
        if m.is_zero() {
            return Ok(info(format!("p = {p}: an equation vanishes mod p; unlucky prime")));
        }
        modp.push(m);
    }
    let gb = buchberger_with(&modp, ring.order(), &GbOptions { budget, algorithm: Algorithm::F4, ..GbOptions::default() })?;
    let one = gb.is_unit_ideal();
    let d14 = gb.contains(&parse_poly(&ring, "d1 - d4")?)?;
    let d25 = gb.contains(&parse_poly(&ring, "d2 - d5")?)?;
    let cert = gb.certificate();
    let detail = format!(
        "p = {p}: d1 - d4 {}, d2 - d5 {}, 1 {}; {} generators, {} pairs reduced, certified {} S-pairs, {} ms",
        if d14 { "in I" } else { "not in I" },
        if d25 { "in I" } else { "not in I" },
        if one { "in I (degenerate image)" } else { "not in I" },
        gb.generators().len(),
        gb.stats().pairs_reduced,
        cert.spairs_checked,
        gb.stats().elapsed_ms
    );
    Ok(verdict(d14 && d25 && !one, detail))
}

/// Builds the Alt4 system over Q, reduces it modulo each prime and checks
/// that `d1 - d4` and `d2 - d5` lie in the ideal while `1` does not.
pub fn verify_alt4(opts: &Alt4Options) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("alt4");
    let mut system = None;
    report.run("construction", || {
        let net = build_alt4()?;
        let rows = net.compare_printed(&ALT4_PRINTED)?;
        let bad: Vec<String> = rows.iter().filter(|r| !r.matches).map(|r| r.point.to_string()).collect();
        if !bad.is_empty() {
            return Ok(fail(format!("printed coordinates differ at {}", bad.join(","))));
        }
        let sys = alt4_constraints(&net)?;
        let detail = format!(
            "{} points; {} equations d(i,j,i*j) not identically zero; {} nonzero determinants; {}",
            net.points.len(),
            sys.equations.len(),
            ALT4_Y.len(),
            sys.notes.join("; ")
        );
        system = Some(sys);
        Ok(verdict(true, detail))
    });
    let Some(sys) = system else {
        return Ok(report);
    };
    debug_assert_eq!(sys.equations.len(), ALT4_EQUATION_COUNT);
    let eqs: Vec<MultiPoly<Rationals>> = sys.equations.iter().map(|l| l.poly.clone()).collect();

    let results: Vec<(u64, Outcome, u64)> = opts
        .primes
        .par_iter()
        .map(|&p| {
            let start = std::time::Instant::now();
            let out = match run_prime(p, &eqs, opts.budget) {
                Ok(o) => o,
                Err(e @ Error::BudgetExceeded { .. }) => (Status::Timeout, format!("p = {p}: {e}")),
                Err(e @ Error::BadPrime(_)) => info(format!("p = {p}: {e}; try another prime")),
                Err(e) => fail(format!("p = {p}: error: {e}")),
            };
            (p, out, start.elapsed().as_millis() as u64)
        })
        .collect();
    let count = |s: Status| results.iter().filter(|r| r.1 .0 == s).count();
    let (passed, failed, timed_out) = (count(Status::Pass), count(Status::Fail), count(Status::Timeout));
    for (p, out, ms) in results {
        report.push(format!("membership mod {p}"), out, ms);
    }
    let quorum_status = if passed >= opts.quorum {
        Status::Pass
    } else if failed == 0 && timed_out > 0 {
        Status::Timeout
    } else {
        Status::Fail
    };
    report.push(
        "quorum",
        (quorum_status, format!("{passed} of {} primes pass; {} required", opts.primes.len(), opts.quorum)),
        0,
    );
    report.push(
        "scope",
        info("membership modulo primes is evidence consistent with the characteristic-zero claim, not a proof over Q"),
        0,
    );
    // surplus primes that time out do not block a met quorum
    if passed >= opts.quorum && report.checks.iter().all(|c| c.status != Status::Fail) {
        report.overall = Status::Pass;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_moduli() {
        let sys_eq = vec![parse_poly(&crate::poly::PolyRing::new(Rationals, &["a"], crate::poly::OrderKind::Lex).unwrap(), "a").unwrap()];
        assert!(matches!(run_prime(7, &sys_eq, None), Err(Error::UnsupportedPrime(7, _))));
        assert!(matches!(run_prime(32004, &sys_eq, None), Err(Error::UnsupportedPrime(..))));
    }
}
