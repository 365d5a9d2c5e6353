use super::chain::{ChainComplex, Coefficients};
use super::echelon::Echelon;
use super::modp::{FpEchelon, FpVec};
use super::sparse::SparseVec;

enum Span {
    Lattice(Echelon),
    Field(FpEchelon),
}

/// The boundary image `B_k = im ∂_{k+1}`, for membership tests without a full homology
/// computation.
pub struct BoundarySpace {
    coefficients: Coefficients,
    span: Span,
}

impl BoundarySpace {
    pub fn new(cc: &ChainComplex, k: usize) -> Self {
        let cols = cc.boundary(k + 1);
        let span = match cc.coefficients {
            Coefficients::Zp(p) => {
                let mut e = FpEchelon::new(p, false);
                for c in cols {
                    e.insert(FpVec::from_int(c, p), FpVec::default());
                }
                Span::Field(e)
            }
            _ => {
                let mut e = Echelon::new();
                for c in cols {
                    e.insert(c.clone(), SparseVec::new());
                }
                Span::Lattice(e)
            }
        };
        BoundarySpace {
            coefficients: cc.coefficients,
            span,
        }
    }

    pub fn rank(&self) -> usize {
        match &self.span {
            Span::Lattice(e) => e.rank(),
            Span::Field(e) => e.rank(),
        }
    }

    pub fn contains(&self, z: &SparseVec) -> bool {
        match (&self.span, self.coefficients) {
            (Span::Lattice(e), Coefficients::Q) => e.contains_rational(z),
            (Span::Lattice(e), _) => e.contains(z),
            (Span::Field(e), Coefficients::Zp(p)) => e.contains(&FpVec::from_int(z, p)),
            (Span::Field(_), _) => unreachable!("field spans carry a prime"),
        }
    }
}
