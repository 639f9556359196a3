//! The Lamé closure argument for C2×C4.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::groups::CayleyTable;
use crate::lame::{
    all_points, c2c4_chain, closure_chain, format_points, parse_points, validate_lame, ClosureOutcome, LameConfig,
    TriplePoint, C2C4_SEED_CORRECTED, C2C4_SEED_LITERAL, C2C4_SEED_U1_GRID,
};

use super::{fail, info, pass, verdict, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedChoice {
    Literal,
    Corrected,
    /// A user seed, optionally with its own chain.
    Custom { seed: BTreeSet<TriplePoint>, chain: Option<Vec<LameConfig>> },
}

/// Points known after replaying the first `n` steps.
fn known_after(seed: &BTreeSet<TriplePoint>, out: &ClosureOutcome, n: usize) -> BTreeSet<TriplePoint> {
    let mut k = seed.clone();
    for s in out.steps.iter().filter(|s| s.index < n) {
        k.extend(s.added.iter().copied());
    }
    k
}

fn outcome_text(out: &ClosureOutcome) -> String {
    match &out.failure {
        None => format!("closes to {} points", out.known.len()),
        Some(f) => format!(
            "stops at step {} with {} points known; {} missing from {}",
            f.index + 1,
            out.known.len(),
            f.missing.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
            f.config
        ),
    }
}

pub fn verify_c2c4(choice: &SeedChoice) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("c2c4");
    let table = CayleyTable::builtin("c2c4")?;
    let named = c2c4_chain();
    let (seed, chain, builtin_chain) = match choice {
        SeedChoice::Literal => (parse_points(C2C4_SEED_LITERAL)?, None, true),
        SeedChoice::Corrected => (parse_points(C2C4_SEED_CORRECTED)?, None, true),
        SeedChoice::Custom { seed, chain } => (seed.clone(), chain.clone(), chain.is_none()),
    };
    let chain: Vec<LameConfig> = chain.unwrap_or_else(|| named.iter().map(|(_, c)| *c).collect());

    report.run("configurations valid", || {
        let mut bad = Vec::new();
        for (i, cfg) in chain.iter().enumerate() {
            if let Err(e) = validate_lame(cfg, &table) {
                bad.push(format!("#{}: {e}", i + 1));
            }
        }
        Ok(verdict(bad.is_empty(), if bad.is_empty() { format!("{} Lamé configurations", chain.len()) } else { bad.join("; ") }))
    });

    let mut outcome = None;
    report.run("closure reaches all 24 points", || {
        let out = closure_chain(&table, &seed, &chain)?;
        let full = out.failure.is_none() && out.known == all_points(&table);
        let detail = format!("seed {} ({} points): {}", format_points(&seed), seed.len(), outcome_text(&out));
        outcome = Some(out);
        Ok(verdict(full, detail))
    });

    if builtin_chain {
        let milestones: [(&str, usize, &str); 3] = [
            ("after U1, U2: 3_2 and 5_2", 2, "3_2,5_2"),
            ("after U1..U4: twelve points", 4, ""),
            ("after M1..M6: 5_1,7_1,2_2,4_2,6_3,8_3", 10, "5_1,7_1,2_2,4_2,6_3,8_3"),
        ];
        for (name, n, pts) in milestones {
            report.run(format!("milestone {name}"), || {
                let Some(out) = &outcome else {
                    return Ok(fail("closure did not run"));
                };
                let k = known_after(&seed, out, n);
                if out.failure.as_ref().is_some_and(|f| f.index < n) {
                    return Ok(fail(format!("chain stopped before step {n}")));
                }
                if pts.is_empty() {
                    return Ok(verdict(k.len() == 12, format!("{} points known", k.len())));
                }
                let want = parse_points(pts)?;
                let missing: Vec<String> = want.difference(&k).map(|p| p.to_string()).collect();
                Ok(verdict(missing.is_empty(), if missing.is_empty() { format!("{} points known", k.len()) } else { format!("missing {}", missing.join(",")) }))
            });
        }
        for (name, s) in [("literal seed", C2C4_SEED_LITERAL), ("U1 grid seed", C2C4_SEED_U1_GRID), ("corrected seed", C2C4_SEED_CORRECTED)] {
            let pts = parse_points(s)?;
            if pts == seed {
                continue;
            }
            report.run(name, || {
                let out = closure_chain(&table, &pts, &chain)?;
                Ok(info(format!("{s} ({} distinct points): {}", pts.len(), outcome_text(&out))))
            });
        }
    } else {
        report.push("milestones", info("custom chain; prose milestones not applicable"), 0);
    }
    if report.checks.is_empty() {
        report.push("chain", pass("empty"), 0);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    #[test]
    fn corrected_passes_literal_fails() {
        let r = verify_c2c4(&SeedChoice::Corrected).unwrap();
        assert_eq!(r.overall, Status::Pass, "{r}");
        assert_eq!(r.checks.iter().filter(|c| c.status == Status::Skipped).count(), 2);
        let l = verify_c2c4(&SeedChoice::Literal).unwrap();
        assert_eq!(l.overall, Status::Fail);
    }
}
