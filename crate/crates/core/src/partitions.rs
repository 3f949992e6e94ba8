//! Partitions of PG(n-1, q) into (q+1)-point parts obtained as j-images of
//! line spreads, and an independent partition verifier.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::Tower;
use crate::inversion::{invert_point, is_arc, nrc_points};
use crate::pg::ProjPoint;
use crate::spreads::{desarguesian_line_spread, HalfSpreadFrame, Spread};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartKind {
    Line,
    /// normal rational curve of the given order
    Nrc(usize),
    /// q+1 independent points
    Tuple(usize),
}

impl PartKind {
    pub fn name(self) -> &'static str {
        match self {
            PartKind::Line => "line",
            PartKind::Nrc(_) => "nrc",
            PartKind::Tuple(_) => "tuple",
        }
    }

    /// 1 for a line, r for nrc(r), the size for a tuple.
    pub fn order(self) -> usize {
        match self {
            PartKind::Line => 1,
            PartKind::Nrc(r) | PartKind::Tuple(r) => r,
        }
    }

    pub fn from_name(name: &str, order: usize) -> Result<Self> {
        match name {
            "line" if order == 1 => Ok(PartKind::Line),
            "nrc" => Ok(PartKind::Nrc(order)),
            "tuple" => Ok(PartKind::Tuple(order)),
            _ => Err(Error::Parse(format!(
                "unknown part kind {name:?} of order {order}"
            ))),
        }
    }
}

impl fmt::Display for PartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartKind::Line => write!(f, "line"),
            PartKind::Nrc(r) => write!(f, "nrc({r})"),
            PartKind::Tuple(s) => write!(f, "tuple({s})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Part {
    /// sorted
    pub points: Vec<ProjPoint>,
    pub kind: PartKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub q: u32,
    pub proj_dim: usize,
    /// sorted by point list
    pub parts: Vec<Part>,
}

impl Partition {
    pub fn count(&self, kind: PartKind) -> usize {
        self.parts.iter().filter(|p| p.kind == kind).count()
    }

    pub fn line_count(&self) -> usize {
        self.count(PartKind::Line)
    }
}

/// Kind of a (q+1)-point set. The ambient dimension caps the natural curve
/// order: a q-dimensional span below that cap is reported as a tuple.
pub fn classify_part(t: &Tower, points: &[ProjPoint]) -> Result<PartKind> {
    let size = t.q() as usize + 1;
    if points.len() != size {
        return Err(Error::WrongCardinality {
            expected: size,
            found: points.len(),
        });
    }
    let s = t.span_pdim(points);
    if s == 1 {
        return Ok(PartKind::Line);
    }
    let s = s as usize;
    if s < 2 || !is_arc(t, points, s + 1) {
        return Err(Error::Unclassifiable);
    }
    let proj_dim = t.n() - 1;
    if s == t.q() as usize && s < proj_dim {
        Ok(PartKind::Tuple(size))
    } else {
        Ok(PartKind::Nrc(s))
    }
}

/// {j(ℓ) : ℓ ∈ spread}, each part classified.
pub fn image_partition(t: &Tower, spread: &Spread) -> Result<Partition> {
    if spread.vdim() != 2 {
        return Err(Error::NotASpread("not a line spread".into()));
    }
    let mut parts = spread
        .elements()
        .par_iter()
        .map(|l| {
            let mut points: Vec<ProjPoint> = t
                .subspace_points(l)
                .into_iter()
                .map(|p| invert_point(t, p))
                .collect();
            points.sort_unstable();
            let kind = classify_part(t, &points)?;
            Ok(Part { points, kind })
        })
        .collect::<Result<Vec<_>>>()?;
    parts.sort();
    Ok(Partition {
        q: t.q(),
        proj_dim: t.n() - 1,
        parts,
    })
}

/// r = |spread ∩ D| for a line spread of PG(3, q).
pub fn mixed_partition_type(t: &Tower, spread: &Spread) -> Result<usize> {
    if t.n() != 4 {
        return Err(Error::WrongAmbient);
    }
    let d = desarguesian_line_spread(t)?;
    let mut ours: Vec<_> = spread.elements().to_vec();
    ours.sort();
    let mut theirs: Vec<_> = d.elements().to_vec();
    theirs.sort();
    Ok(ours
        .iter()
        .filter(|l| theirs.binary_search(l).is_ok())
        .count())
}

/// Image of the scattered line spread of PG(2^k - 1, q); `t` must have
/// degree n = 2^k.
pub fn nrc_partition(t: &Tower, k: u32) -> Result<Partition> {
    if k < 2 {
        return Err(Error::InvalidK(format!("k = {k}, need k > 1")));
    }
    if k >= usize::BITS || t.n() != 1usize << k {
        return Err(Error::InvalidK(format!(
            "k = {k} needs degree 2^k, tower has {}",
            t.n()
        )));
    }
    let frame = HalfSpreadFrame::new(t)?;
    image_partition(t, &frame.scattered_line_spread()?)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    WrongSpace {
        q: u32,
        proj_dim: usize,
    },
    WrongSize {
        part: usize,
        found: usize,
    },
    Duplicate {
        point: ProjPoint,
        first_part: usize,
        part: usize,
    },
    Hole {
        point: ProjPoint,
    },
    KindMismatch {
        part: usize,
        declared: PartKind,
        found: Option<PartKind>,
    },
    OracleMismatch {
        part: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongSpace { q, proj_dim } => {
                write!(
                    f,
                    "partition is for PG({proj_dim},{q}), not the configured space"
                )
            }
            Violation::WrongSize { part, found } => write!(f, "part {part}: {found} points"),
            Violation::Duplicate {
                point,
                first_part,
                part,
            } => write!(
                f,
                "duplicate point {} in parts {first_part} and {part}",
                point.rep().code()
            ),
            Violation::Hole { point } => write!(f, "hole at point {}", point.rep().code()),
            Violation::KindMismatch {
                part,
                declared,
                found,
            } => match found {
                Some(k) => write!(f, "part {part}: declared {declared}, classified {k}"),
                None => write!(f, "part {part}: declared {declared}, unclassifiable"),
            },
            Violation::OracleMismatch { part } => {
                write!(
                    f,
                    "part {part}: differs from the curve of its preimage line"
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub parts: usize,
    pub points: u128,
    /// sorted
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks disjointness and cover through an occupancy table, re-classifies
/// every part, and compares curve parts with the oracle curve of their
/// preimage line. Trusts nothing but the point lists and declared kinds.
pub fn verify_partition(t: &Tower, p: &Partition) -> Report {
    let mut violations = Vec::new();
    if p.q != t.q() || p.proj_dim + 1 != t.n() {
        violations.push(Violation::WrongSpace {
            q: p.q,
            proj_dim: p.proj_dim,
        });
        return Report {
            parts: p.parts.len(),
            points: 0,
            violations,
        };
    }
    // part index + 1 per canonical code, 0 = uncovered
    let mut occupancy = vec![0u32; t.order() as usize];
    let mut points = 0u128;
    for (idx, part) in p.parts.iter().enumerate() {
        for &pt in &part.points {
            points += 1;
            let slot = &mut occupancy[pt.rep().code() as usize];
            if *slot != 0 {
                violations.push(Violation::Duplicate {
                    point: pt,
                    first_part: *slot as usize - 1,
                    part: idx,
                });
            } else {
                *slot = idx as u32 + 1;
            }
        }
    }
    violations.extend(
        t.all_points()
            .filter(|pt| occupancy[pt.rep().code() as usize] == 0)
            .map(|point| Violation::Hole { point }),
    );
    let per_part: Vec<Vec<Violation>> = p
        .parts
        .par_iter()
        .enumerate()
        .map(|(idx, part)| check_part(t, idx, part))
        .collect();
    violations.extend(per_part.into_iter().flatten());
    violations.sort();
    Report {
        parts: p.parts.len(),
        points,
        violations,
    }
}

fn check_part(t: &Tower, idx: usize, part: &Part) -> Vec<Violation> {
    let size = t.q() as usize + 1;
    if part.points.len() != size {
        return vec![Violation::WrongSize {
            part: idx,
            found: part.points.len(),
        }];
    }
    let found = classify_part(t, &part.points).ok();
    let mut out = Vec::new();
    if found != Some(part.kind) {
        out.push(Violation::KindMismatch {
            part: idx,
            declared: part.kind,
            found,
        });
    }
    if matches!(found, Some(PartKind::Nrc(_) | PartKind::Tuple(_))) {
        let a = invert_point(t, part.points[0]).rep();
        let b = invert_point(t, part.points[1]).rep();
        let mut ours = part.points.clone();
        ours.sort_unstable();
        if nrc_points(t, a, b).map_or(true, |curve| curve != ours) {
            out.push(Violation::OracleMismatch { part: idx });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inversion::canonical_nrc;
    use crate::spreads::is_scattered;

    fn tower(p: u32, e: usize, n: usize) -> Tower {
        Tower::with_defaults(p, e, n).unwrap()
    }

    #[test]
    fn classify_examples() {
        let t = tower(3, 1, 4);
        let l = t.span(&[t.one(), t.alpha()]);
        assert_eq!(
            classify_part(&t, &t.subspace_points(&l)).unwrap(),
            PartKind::Line
        );
        let c = canonical_nrc(&t, 3).unwrap();
        assert_eq!(classify_part(&t, &c).unwrap(), PartKind::Nrc(3));
        let t2 = tower(2, 1, 4);
        let c = canonical_nrc(&t2, 3).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(classify_part(&t2, &c).unwrap(), PartKind::Tuple(3));
        assert_eq!(
            classify_part(&t, &c_points(&t, 3)).unwrap_err(),
            Error::WrongCardinality {
                expected: 4,
                found: 3
            }
        );
    }

    fn c_points(t: &Tower, k: usize) -> Vec<ProjPoint> {
        t.all_points().take(k).collect()
    }

    #[test]
    fn classify_rejects_non_arcs() {
        let t = tower(3, 1, 4);
        // three collinear points plus one off the line
        let l = t.span(&[t.one(), t.alpha()]);
        let mut pts: Vec<ProjPoint> = t.subspace_points(&l).into_iter().take(3).collect();
        pts.push(t.point(t.basis_vector(3)).unwrap());
        pts.sort();
        assert_eq!(classify_part(&t, &pts).unwrap_err(), Error::Unclassifiable);
    }

    #[test]
    fn d_maps_to_all_lines() {
        for (p, n) in [(2, 4), (3, 4), (2, 6)] {
            let t = tower(p, 1, n);
            let d = desarguesian_line_spread(&t).unwrap();
            let part = image_partition(&t, &d).unwrap();
            assert_eq!(part.line_count(), d.len());
            assert!(verify_partition(&t, &part).is_clean());
            if n == 4 {
                assert_eq!(mixed_partition_type(&t, &d).unwrap(), d.len());
            }
        }
    }

    #[test]
    fn nrc_partition_small() {
        let t = tower(3, 1, 4);
        let part = nrc_partition(&t, 2).unwrap();
        assert_eq!(part.parts.len(), 10);
        assert_eq!(part.count(PartKind::Nrc(3)), 10);
        let report = verify_partition(&t, &part);
        assert!(report.is_clean(), "{:?}", report.violations);
        assert_eq!(report.points, 40);

        let t = tower(2, 1, 8);
        let part = nrc_partition(&t, 3).unwrap();
        assert_eq!(part.parts.len(), 85);
        assert_eq!(part.count(PartKind::Tuple(3)), 85);
        assert!(verify_partition(&t, &part).is_clean());

        let t = tower(2, 2, 4);
        let part = nrc_partition(&t, 2).unwrap();
        assert_eq!(part.count(PartKind::Nrc(3)), 17);
        assert!(verify_partition(&t, &part).is_clean());
    }

    #[test]
    fn nrc_partition_rejects_bad_k() {
        let t = tower(3, 1, 4);
        assert!(matches!(nrc_partition(&t, 1), Err(Error::InvalidK(_))));
        assert!(matches!(nrc_partition(&t, 3), Err(Error::InvalidK(_))));
    }

    #[test]
    fn scattered_spread_is_type_zero() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let t = tower(p, e, 4);
            let frame = HalfSpreadFrame::new(&t).unwrap();
            let spread = frame.scattered_line_spread().unwrap();
            assert_eq!(mixed_partition_type(&t, &spread).unwrap(), 0);
            let part = image_partition(&t, &spread).unwrap();
            assert_eq!(part.line_count(), 0);
        }
    }

    #[test]
    fn type_equals_line_parts_for_twisted_spreads() {
        // S^φ and the subfield spread are line spreads of PG(3, q) with
        // different overlaps with D
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let t = tower(p, e, 4);
            let frame = HalfSpreadFrame::new(&t).unwrap();
            for spread in [frame.phi_spread().unwrap(), frame.spread().unwrap()] {
                let r = mixed_partition_type(&t, &spread).unwrap();
                let part = image_partition(&t, &spread).unwrap();
                assert_eq!(part.line_count(), r);
                assert_eq!(
                    part.parts.len() - r,
                    part.count(PartKind::Nrc(3)) + part.count(PartKind::Tuple(3))
                );
                assert!(verify_partition(&t, &part).is_clean());
            }
        }
    }

    #[test]
    fn wrong_ambient_for_type() {
        let t = tower(2, 1, 6);
        let d = desarguesian_line_spread(&t).unwrap();
        assert_eq!(
            mixed_partition_type(&t, &d).unwrap_err(),
            Error::WrongAmbient
        );
    }

    #[test]
    fn moved_point_gives_duplicate_and_hole() {
        let t = tower(3, 1, 4);
        let mut part = nrc_partition(&t, 2).unwrap();
        let lost = part.parts[0].points[0];
        let moved = part.parts[1].points[0];
        part.parts[0].points[0] = moved;
        let report = verify_partition(&t, &part);
        assert!(report.violations.contains(&Violation::Hole { point: lost }));
        assert!(report.violations.contains(&Violation::Duplicate {
            point: moved,
            first_part: 0,
            part: 1
        }));
    }

    #[test]
    fn verifier_catches_kind_and_oracle_faults() {
        let t = tower(3, 1, 4);
        let mut part = nrc_partition(&t, 2).unwrap();
        part.parts[2].kind = PartKind::Line;
        let report = verify_partition(&t, &part);
        assert_eq!(
            report.violations,
            vec![Violation::KindMismatch {
                part: 2,
                declared: PartKind::Line,
                found: Some(PartKind::Nrc(3))
            }]
        );
        let mut wrong = nrc_partition(&t, 2).unwrap();
        wrong.proj_dim = 5;
        assert!(matches!(
            verify_partition(&t, &wrong).violations[0],
            Violation::WrongSpace { .. }
        ));
    }

    #[test]
    fn oracle_rejects_foreign_arc() {
        // an arc passes the oracle exactly when it is the image of its
        // preimage line
        let t = tower(3, 1, 4);
        let c = canonical_nrc(&t, 3).unwrap();
        let part = Part {
            points: c,
            kind: PartKind::Nrc(3),
        };
        let v = check_part(&t, 0, &part);
        let a = invert_point(&t, part.points[0]).rep();
        let b = invert_point(&t, part.points[1]).rep();
        let is_image = nrc_points(&t, a, b).unwrap() == part.points;
        assert_eq!(v.is_empty(), is_image);
    }

    #[test]
    fn dichotomy_exhaustive() {
        // PG(3, q): the span separates the two cases for every q
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let t = tower(p, e, 4);
            let s = HalfSpreadFrame::new(&t).unwrap().spread().unwrap();
            let q = t.q() as usize;
            for l in t.lines(crate::pg::DEFAULT_BUDGET).unwrap() {
                let img = crate::inversion::line_image(&t, &l).unwrap();
                let sc = is_scattered(&t, &l, &s);
                assert_eq!(img.m == 4, sc);
                assert_eq!(img.span_pdim == 3.min(q), sc);
            }
        }
        // PG(7, 2): only the embedding degree separates them
        let t = tower(2, 1, 8);
        let s = HalfSpreadFrame::new(&t).unwrap().spread().unwrap();
        for l in t.lines(crate::pg::DEFAULT_BUDGET).unwrap() {
            let img = crate::inversion::line_image(&t, &l).unwrap();
            assert_eq!(img.m == 8, is_scattered(&t, &l, &s));
            assert_eq!(img.span_pdim, (img.m - 1).min(2));
        }
    }

    mod props {
        use super::*;
        use crate::inversion::line_image;
        use crate::spreads::desarguesian_line_spread;
        use proptest::prelude::*;
        use std::sync::OnceLock;

        fn pg33() -> &'static Tower {
            static T: OnceLock<Tower> = OnceLock::new();
            T.get_or_init(|| Tower::with_defaults(3, 1, 4).unwrap())
        }

        fn pg73() -> &'static Tower {
            static T: OnceLock<Tower> = OnceLock::new();
            T.get_or_init(|| Tower::with_defaults(3, 1, 8).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn twisted_spreads_partition_cleanly(i in 0u32..81) {
                let t = pg33();
                let i = t.element(i).unwrap();
                prop_assume!(!t.in_subfield(i, 2));
                let f = HalfSpreadFrame::with_i(t, i).unwrap();
                for spread in [f.phi_spread().unwrap(), f.scattered_line_spread().unwrap()] {
                    let part = image_partition(t, &spread).unwrap();
                    prop_assert!(verify_partition(t, &part).is_clean());
                    prop_assert_eq!(part.line_count(), mixed_partition_type(t, &spread).unwrap());
                    prop_assert_eq!(part.parts.len() as u128 * 4, t.point_count());
                }
                let d = desarguesian_line_spread(t).unwrap();
                prop_assert_eq!(mixed_partition_type(t, &d).unwrap(), 10);
            }

            #[test]
            fn dichotomy_on_sampled_lines(a in 1u32..6561, b in 1u32..6561) {
                let t = pg73();
                let (a, b) = (t.element(a).unwrap(), t.element(b).unwrap());
                prop_assume!(t.point_of(a) != t.point_of(b));
                static S: OnceLock<Spread> = OnceLock::new();
                let s = S.get_or_init(|| HalfSpreadFrame::new(t).unwrap().spread().unwrap());
                let l = t.span(&[a, b]);
                let img = line_image(t, &l).unwrap();
                let sc = is_scattered(t, &l, s);
                // with q = 3 the span cannot separate m = 4 from m = 8
                prop_assert_eq!(img.m == 8, sc);
                prop_assert_eq!(img.span_pdim, (img.m - 1).min(3));
                if !sc {
                    prop_assert!(4 % img.m == 0);
                }
            }
        }
    }
}
