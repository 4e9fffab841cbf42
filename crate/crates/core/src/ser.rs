//! Serde helpers: complex vectors serialize as `[re, im]` pairs in nested
//! arrays, matching the state-set JSON schema.

use serde::Serializer;

use crate::numerics::CVector;

pub(crate) fn cvector_list<S: Serializer>(vs: &[CVector], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[f64; 2]>> = vs
        .iter()
        .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
        .collect();
    s.collect_seq(rows)
}
