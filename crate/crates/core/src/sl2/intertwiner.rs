use super::{Generator, Sl2Error, WeightModule};
use crate::exact::{ExactMatrix, MatrixError};

/// Which generators an intertwiner must commute with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// `H`, `X` and `Y`.
    Sl2,
    /// Only the Cartan element `H`.
    Cartan,
}

impl Symmetry {
    fn generators(self) -> &'static [Generator] {
        match self {
            Symmetry::Sl2 => &Generator::ALL,
            Symmetry::Cartan => &[Generator::H],
        }
    }
}

/// Exact linear map between weight modules with a checked equivariance flag.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    source: WeightModule,
    target: WeightModule,
    matrix: ExactMatrix,
    symmetry: Symmetry,
    equivariant: bool,
}

impl Intertwiner {
    /// Wraps `matrix` and checks `matrix . Z_source = Z_target . matrix` on the
    /// source columns with headroom at least `degree + 1`.
    pub fn checked(
        source: WeightModule,
        target: WeightModule,
        matrix: ExactMatrix,
        symmetry: Symmetry,
        degree: usize,
    ) -> Result<Self, Sl2Error> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(MatrixError::DimensionMismatch {
                op: "intertwiner",
                left: matrix.shape(),
                right: (target.dim(), source.dim()),
            }
            .into());
        }
        let cols = source.interior(degree.saturating_add(1));
        let equivariant = symmetry.generators().iter().all(|&g| {
            let lhs = &matrix * source.generator(g);
            let rhs = target.generator(g) * &matrix;
            lhs.agrees_on_columns(&rhs, &cols)
        });
        Ok(Intertwiner {
            source,
            target,
            matrix,
            symmetry,
            equivariant,
        })
    }

    pub fn source(&self) -> &WeightModule {
        &self.source
    }

    pub fn target(&self) -> &WeightModule {
        &self.target
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn is_equivariant(&self) -> bool {
        self.equivariant
    }

    pub fn apply(&self, v: &[crate::exact::ExactScalar]) -> Vec<crate::exact::ExactScalar> {
        self.matrix.apply(v)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}
