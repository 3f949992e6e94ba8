use std::error::Error as StdError;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use invgeom::inversion::{assemble_psi_params, psi_check, psi_params};
use invgeom::io::{partition_from_json, partition_to_json, spread_to_json};
use invgeom::partitions::{nrc_partition, verify_partition, PartKind, Report};
use invgeom::pg::gaussian_binomial;
use invgeom::spreads::{
    desarguesian_line_spread, fixed_line_census, line_image_census, subspace_image_census,
    HalfSpreadFrame,
};
use invgeom::{Error, FieldElement, Tower, TowerConfig};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{CensusKind, FieldArgs, SpaceArgs, SpreadKind};

/// Ok(true) = pass, Ok(false) = contract violation, Err = invalid input.
pub type Outcome = Result<bool, Box<dyn StdError>>;

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(flag: &str, text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("--{flag}: {e}")))
}

fn tower_config(field: &FieldArgs, n: usize) -> Result<TowerConfig, Error> {
    let base = field
        .base_poly
        .as_deref()
        .map(|s| parse_json::<Vec<u32>>("base-poly", s))
        .transpose()?;
    let ext = match field.ext_poly.as_deref() {
        None => None,
        Some(s) => Some(match parse_json::<Vec<Vec<u32>>>("ext-poly", s) {
            Ok(v) => v,
            Err(_) if field.e == 1 => parse_json::<Vec<u32>>("ext-poly", s)?
                .into_iter()
                .map(|c| vec![c])
                .collect(),
            Err(e) => return Err(e),
        }),
    };
    TowerConfig::with_moduli(field.p, field.e, n, base, ext)
}

fn check_budget(field: &FieldArgs, n: usize, budget: u128) -> Result<(), Error> {
    let needed = (field.p as u128)
        .checked_pow((field.e * n) as u32)
        .filter(|_| {
            field
                .e
                .checked_mul(n)
                .is_some_and(|d| d <= u32::MAX as usize)
        })
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

fn tower(space: &SpaceArgs) -> Result<Tower, Error> {
    check_budget(&space.field, space.n, space.budget)?;
    Tower::new(tower_config(&space.field, space.n)?)
}

fn write_output(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn emit(text: &str) {
    print!("{text}");
}

fn render_report(report: &Report) -> String {
    let mut s = String::new();
    for v in &report.violations {
        writeln!(s, "violation: {v}").unwrap();
    }
    writeln!(
        s,
        "parts={} points={} violations={} {}",
        report.parts,
        report.points,
        report.violations.len(),
        verdict(report.is_clean())
    )
    .unwrap();
    s
}

pub fn construct(field: &FieldArgs, k: u32, out: Option<&Path>) -> Outcome {
    if k < 2 {
        return Err(Error::InvalidK(format!("k = {k}, need k > 1")).into());
    }
    let n = 1usize
        .checked_shl(k)
        .filter(|_| k < 32)
        .ok_or(Error::BudgetExceeded {
            needed: u128::MAX,
            budget: invgeom::DEFAULT_BUDGET,
        })?;
    check_budget(field, n, invgeom::DEFAULT_BUDGET)?;
    let t = Tower::new(tower_config(field, n)?)?;
    let partition = nrc_partition(&t, k)?;
    let report = verify_partition(&t, &partition);
    let mut json = partition_to_json(&t, &partition);
    json.push('\n');
    write_output(out, &json)?;
    let mut summary = format!(
        "construct PG({},{}) lines={} nrc={} tuple={} ",
        t.n() - 1,
        t.q(),
        partition.line_count(),
        partition
            .parts
            .iter()
            .filter(|p| matches!(p.kind, PartKind::Nrc(_)))
            .count(),
        partition
            .parts
            .iter()
            .filter(|p| matches!(p.kind, PartKind::Tuple(_)))
            .count(),
    );
    summary.push_str(&render_report(&report));
    if out.is_some() {
        emit(&summary);
    } else {
        eprint!("{summary}");
    }
    Ok(report.is_clean())
}

pub fn verify(file: &Path) -> Outcome {
    let text = std::fs::read_to_string(file)?;
    let (t, partition) = partition_from_json(&text)?;
    let report = verify_partition(&t, &partition);
    emit(&format!(
        "verify PG({},{}) {}",
        t.n() - 1,
        t.q(),
        render_report(&report)
    ));
    Ok(report.is_clean())
}

pub fn census(kind: CensusKind, space: &SpaceArgs, m: Option<usize>) -> Outcome {
    let t = tower(space)?;
    let (q, n) = (t.q(), t.n());
    let (line, pass) = match kind {
        CensusKind::SpreadBase => {
            let matching = line_image_census(&t, space.budget)?;
            let expected = if n % 2 == 0 {
                desarguesian_line_spread(&t)?.elements().to_vec()
            } else {
                Vec::new()
            };
            let total = gaussian_binomial(n, 2, q as u64);
            let pass = matching == expected;
            (
                format!(
                    "spread-base q={q} n={n} matching={}/{total} desarguesian={}",
                    matching.len(),
                    expected.len()
                ),
                pass,
            )
        }
        CensusKind::FixedLines => {
            let count = fixed_line_census(&t)?;
            let expected = if n % 4 == 0 && q % 2 == 1 { 2 } else { 1 };
            (
                format!("fixed-lines q={q} n={n} fixed={count} expected={expected}"),
                count == expected,
            )
        }
        CensusKind::Cs2 => {
            let m = m.ok_or_else(|| Error::InvalidConfig("cs2 needs --m".into()))?;
            let c = subspace_image_census(&t, m, space.budget)?;
            let hypothesis = m > q as usize;
            let mut line = format!(
                "cs2 q={q} n={n} m={m} matching={}/{} spread={}",
                c.matching.len(),
                c.total,
                if c.is_spread { "yes" } else { "no" }
            );
            if !hypothesis {
                line.push_str(" hypothesis=unmet");
            }
            (line, c.is_spread || !hypothesis)
        }
        CensusKind::X4 => intersection_census(&t)?,
    };
    emit(&format!("{line} {}\n", verdict(pass)));
    Ok(pass)
}

fn intersection_census(t: &Tower) -> Result<(String, bool), Error> {
    let frame = HalfSpreadFrame::new(t)?;
    let half = frame.half_degree();
    let units: Vec<FieldElement> = frame.m_elements().into_iter().skip(1).collect();
    let rows = units
        .par_iter()
        .map(|&a| {
            let mut hits = 0u64;
            let mut bad = 0u64;
            let mut max = 0u128;
            for &b in &units {
                let count = frame.scattered_intersection_check(a, b)?;
                let u = t.mul(a, t.inv(t.frobenius(b, 1))?);
                let solvable = t.relative_norm(u, half, 1)? == t.one();
                max = max.max(count);
                hits += (count == 1) as u64;
                bad += ((count == 1) != solvable) as u64;
            }
            Ok((hits, bad, max))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let hits: u64 = rows.iter().map(|r| r.0).sum();
    let bad: u64 = rows.iter().map(|r| r.1).sum();
    let max = rows.iter().map(|r| r.2).max().unwrap_or(0);
    let pairs = units.len() * units.len();
    Ok((
        format!(
            "x4 q={} n={} pairs={pairs} one_point={hits} max={max} norm_rule_mismatches={bad}",
            t.q(),
            half
        ),
        max <= 1 && bad == 0,
    ))
}

pub fn check_psi(space: &SpaceArgs, h: usize, hp: usize, trials: usize, seed: u64) -> Outcome {
    let t = tower(space)?;
    let base = psi_params(&t, h, hp, t.one())?;
    let mut ks: Vec<FieldElement> = t
        .elements()
        .filter(|&k| !k.is_zero() && t.norm(k, 1).is_ok_and(|v| v == t.one()))
        .collect();
    let mut xs: Vec<FieldElement> = t.elements().skip(1).collect();
    let exhaustive = (ks.len() as u128) * (xs.len() as u128) <= space.budget;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if !exhaustive {
        ks = ks
            .choose_multiple(&mut rng, trials.min(ks.len()))
            .copied()
            .collect();
        if xs.len() as u128 * ks.len() as u128 > space.budget {
            xs = xs
                .choose_multiple(&mut rng, trials.min(xs.len()))
                .copied()
                .collect();
        }
    }
    let failures: usize = ks
        .par_iter()
        .map(|&k| {
            let params = assemble_psi_params(&t, h, hp, k, base.e)?;
            let mut bad = 0usize;
            for &x in &xs {
                bad += !psi_check(&t, x, &params)? as usize;
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .sum();
    emit(&format!(
        "psi q={} n={} h={h} hp={hp} e={} exponent={} mode={} ks={} xs={} failures={failures} {}\n",
        t.q(),
        t.n(),
        base.e,
        base.exponent,
        if exhaustive { "exhaustive" } else { "sampled" },
        ks.len(),
        xs.len(),
        verdict(failures == 0)
    ));
    Ok(failures == 0)
}

pub fn export_spread(kind: SpreadKind, space: &SpaceArgs, out: Option<&Path>) -> Outcome {
    let t = tower(space)?;
    let (name, spread) = match kind {
        SpreadKind::Desarguesian => ("desarguesian", desarguesian_line_spread(&t)?),
        SpreadKind::Half => ("half", HalfSpreadFrame::new(&t)?.spread()?),
        SpreadKind::Scattered => (
            "scattered",
            HalfSpreadFrame::new(&t)?.scattered_line_spread()?,
        ),
    };
    let mut json = spread_to_json(&t, name, &spread);
    json.push('\n');
    write_output(out, &json)?;
    if out.is_some() {
        emit(&format!(
            "export-spread {name} PG({},{}) elements={} vdim={}\n",
            t.n() - 1,
            t.q(),
            spread.len(),
            spread.vdim()
        ));
    }
    Ok(true)
}
