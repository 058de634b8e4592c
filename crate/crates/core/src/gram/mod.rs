//! Gram-matrix spaces: the annihilator `L₀ = {S : Ψ S Ψᵀ ≡ 0}` with a sparse
//! basis built from monomial pairs, and the representation defect solver.

mod defect;
mod pairs;

pub use defect::{annihilates, defect_solve, pencil_annihilates};
pub use pairs::{
    admissible_exponents, annihilator_basis, annihilator_coordinates, annihilator_edges, elementary_transform,
    pair_graph_tree, AnnihilatorEdge, PairSet,
};

use crate::polarize::MonomialBasis;
use crate::polycore::{MatrixForm, Rational, SymMatrix};

/// Affine space of Gram matrices of a target form: `particular + span(L₀)`.
#[derive(Clone, Debug)]
pub struct GramSpace {
    pub basis: MonomialBasis,
    /// Block size; `Ψ = (z^{α_1} I_m, …, z^{α_N} I_m)`.
    pub m: usize,
    pub target: MatrixForm,
    pub particular: SymMatrix,
    pub annihilator_basis: Vec<SymMatrix>,
    /// Largest coefficient of the target that no basis product reaches.
    pub uncovered: Rational,
}

impl GramSpace {
    pub fn size(&self) -> usize {
        self.basis.len() * self.m
    }
}
