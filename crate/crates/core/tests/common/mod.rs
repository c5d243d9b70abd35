#![allow(dead_code)]

use std::sync::Arc;

use mixmult_core::hilbert::GradedQuotient;
use mixmult_core::kernel::{BlockRingSpec, MonomialIdeal};

pub fn spec(blocks: &[&[&str]]) -> Arc<BlockRingSpec> {
    Arc::new(BlockRingSpec::new(blocks.iter().map(|b| b.to_vec()).collect()).unwrap())
}

pub fn vars(spec: &BlockRingSpec, names: &[&str]) -> MonomialIdeal {
    MonomialIdeal::new(
        spec.num_vars(),
        names.iter().map(|n| spec.variable(spec.var(n).unwrap())),
    )
}

pub fn var_ids(spec: &BlockRingSpec, names: &[&str]) -> Vec<usize> {
    names.iter().map(|n| spec.var(n).unwrap()).collect()
}

/// `k[x1,x2,x3 | y1,y2,y3 | z1,z2,z3] / (x1,y1,z1) ∩ (x1,x2) ∩ (y1,y2) ∩ (z1,z2)`.
pub fn three_block_fixture() -> GradedQuotient {
    let s = spec(&[&["x1", "x2", "x3"], &["y1", "y2", "y3"], &["z1", "z2", "z3"]]);
    let ideal = MonomialIdeal::intersect_all(
        s.num_vars(),
        &[
            vars(&s, &["x1", "y1", "z1"]),
            vars(&s, &["x1", "x2"]),
            vars(&s, &["y1", "y2"]),
            vars(&s, &["z1", "z2"]),
        ],
    );
    GradedQuotient::new(s, ideal).unwrap()
}

/// Polynomial ring in `t` variables of degree one, as a one-block quotient.
pub fn free_single_block(t: usize) -> GradedQuotient {
    let names: Vec<String> = (1..=t).map(|i| format!("X{i}")).collect();
    GradedQuotient::free(Arc::new(BlockRingSpec::single_block(names).unwrap()))
}
