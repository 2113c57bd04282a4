//! Finitely presented modules over computable rings.

mod complex;
mod graded;
mod hom;
mod line;
mod module;
mod oid;

pub use complex::{amitsur_complex, amitsur_report, AmitsurReport, ChainComplex};
pub use graded::{
    graded_line_classify, graded_symmetry, graded_tensor, EpsExtension, EpsReport, GradedLineReport, GradedModule,
    GradedMorphism, SymmetryFlag,
};
pub use hom::{dual_module, hom_module, HomSpace};
pub use line::{line_classify, scalar_of, solve_combination, LineReport};
pub use module::{
    is_symtrivial, lattice_preimage, present_submodule, symmetry, tensor_modules, Linearized, ModMorphism,
    ModulePresentation, Structure,
};
pub use oid::{oid_decompose, Oid, OidReport};

pub use crate::linalg::{smith_decompose, Smith};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactring::{parse_ring, parse_ring_elem, LinearKind, RingDescriptor, RingElem};
use crate::linalg::FieldMatrix;

/// Parses `{"ring": "...", "gens": n, "rels": [["x", "1"], ...]}`; entries may be strings or integers.
pub fn module_from_json(v: &serde_json::Value, ring: Option<&RingDescriptor>) -> Result<ModulePresentation> {
    let ring = match (v.get("ring").and_then(|r| r.as_str()), ring) {
        (Some(s), _) => parse_ring(s)?,
        (None, Some(r)) => r.clone(),
        (None, None) => return Err(Error::Parse("module literal needs \"ring\"".into())),
    };
    let gens = v["gens"].as_u64().ok_or_else(|| Error::Parse("module literal needs integer \"gens\"".into()))? as usize;
    let mut rels = Vec::new();
    if let Some(rows) = v.get("rels") {
        for row in rows.as_array().ok_or_else(|| Error::Parse("\"rels\" must be a list".into()))? {
            let row = row.as_array().ok_or_else(|| Error::Parse("each relation must be a list".into()))?;
            let parsed = row
                .iter()
                .map(|x| match x {
                    serde_json::Value::String(s) => parse_ring_elem(&ring, s),
                    serde_json::Value::Number(n) => parse_ring_elem(&ring, &n.to_string()),
                    _ => Err(Error::Parse(format!("bad relation entry {x}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            rels.push(parsed);
        }
    }
    ModulePresentation::new(&ring, gens, rels).map_err(|e| Error::Parse(e.to_string()))
}

/// `dim_k (M ⊗ R/𝔪)` for a chosen residue field `k = R/𝔪`.
///
/// ℤ uses 𝔽₂, ℤ/n its smallest prime factor, and polynomial quotients the origin when it lies on
/// the zero set of the ideal.
pub fn residue_rank(m: &ModulePresentation) -> Result<usize> {
    match m.ring.linear_kind()? {
        LinearKind::Field { dim: 1, .. } => m.dim(),
        LinearKind::Field { field, .. } => {
            let q = m.ring.pq().ok_or_else(|| Error::Internal("field-linear ring of dim > 1".into()))?;
            if q.gb.iter().any(|g| !g.constant_term().is_zero()) {
                return Err(Error::Unsupported("origin is not a point of this ring".into()));
            }
            let origin = vec![field.zero(); q.nvars()];
            let rows: Vec<Vec<_>> = m
                .rels
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| match x {
                            RingElem::Poly(p) => p.eval(&origin),
                            _ => field.zero(),
                        })
                        .collect()
                })
                .collect();
            let rank = if rows.is_empty() { 0 } else { FieldMatrix::with_shape(&field, rows.len(), m.gens, rows).rank() };
            Ok(m.gens - rank)
        }
        LinearKind::Lattice { modulus } => {
            let p = BigInt::from(match modulus {
                None => 2,
                Some(n) => crate::exactring::factorize(n)[0].0,
            });
            let Structure::Factors(f) = m.structure()? else {
                return Err(Error::Internal("lattice module without invariant factors".into()));
            };
            Ok(f.iter().filter(|d| (*d % &p).is_zero()).count())
        }
    }
}
