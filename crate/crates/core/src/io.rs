//! JSON files for partitions and spreads. Points are written as the
//! flattened little-endian F_p coordinates of their canonical
//! representatives.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Tower, TowerConfig};
use crate::partitions::{Part, PartKind, Partition};
use crate::pg::ProjPoint;
use crate::spreads::Spread;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceRecord {
    pub q: u32,
    pub proj_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartRecord {
    pub kind: String,
    pub order: usize,
    pub points: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionFile {
    pub field: TowerConfig,
    pub space: SpaceRecord,
    pub parts: Vec<PartRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpreadFile {
    pub field: TowerConfig,
    pub space: SpaceRecord,
    pub kind: String,
    pub vdim: usize,
    /// echelon basis of each element
    pub elements: Vec<Vec<Vec<u32>>>,
}

fn space(t: &Tower) -> SpaceRecord {
    SpaceRecord {
        q: t.q(),
        proj_dim: t.n() - 1,
    }
}

pub fn partition_to_json(t: &Tower, p: &Partition) -> String {
    let file = PartitionFile {
        field: t.config().clone(),
        space: SpaceRecord {
            q: p.q,
            proj_dim: p.proj_dim,
        },
        parts: p
            .parts
            .iter()
            .map(|part| PartRecord {
                kind: part.kind.name().to_string(),
                order: part.kind.order(),
                points: part.points.iter().map(|pt| t.flatten(pt.rep())).collect(),
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("serializable")
}

/// Parses a partition file and rebuilds its tower. Malformed JSON, a bad
/// field description, a space that does not match the field, and
/// non-canonical points are all errors.
pub fn partition_from_json(text: &str) -> Result<(Tower, Partition)> {
    let file: PartitionFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let t = Tower::new(file.field)?;
    if file.space != space(&t) {
        return Err(Error::Parse(format!(
            "space PG({},{}) does not match the field",
            file.space.proj_dim, file.space.q
        )));
    }
    let parts = file
        .parts
        .iter()
        .enumerate()
        .map(|(idx, rec)| {
            let kind = PartKind::from_name(&rec.kind, rec.order)?;
            let points = rec
                .points
                .iter()
                .map(|flat| {
                    parse_point(&t, flat).map_err(|e| Error::Parse(format!("part {idx}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Part { points, kind })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        t,
        Partition {
            q: file.space.q,
            proj_dim: file.space.proj_dim,
            parts,
        },
    ))
}

fn parse_point(t: &Tower, flat: &[u32]) -> Result<ProjPoint> {
    let z = t.from_flat(flat).map_err(|e| Error::Parse(e.to_string()))?;
    let pt = t.point(z).map_err(|_| Error::Parse("zero vector".into()))?;
    if pt.rep() != z {
        return Err(Error::Parse(format!(
            "{flat:?} is not a canonical representative"
        )));
    }
    Ok(pt)
}

pub fn spread_to_json(t: &Tower, kind: &str, s: &Spread) -> String {
    let file = SpreadFile {
        field: t.config().clone(),
        space: space(t),
        kind: kind.to_string(),
        vdim: s.vdim(),
        elements: s
            .elements()
            .iter()
            .map(|e| e.basis().iter().map(|&z| t.flatten(z)).collect())
            .collect(),
    };
    serde_json::to_string(&file).expect("serializable")
}
