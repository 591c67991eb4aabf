use crate::exactcore::{Matrix, MultiPoly, Scalar};

/// Polynomial vector field `Σ v_i ∂/∂x_i` over the differential variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyField {
    nvars: usize,
    comps: Vec<MultiPoly>,
}

impl PolyField {
    pub fn new(comps: Vec<MultiPoly>) -> Self {
        assert!(!comps.is_empty());
        let nvars = comps[0].nvars();
        assert!(comps.iter().all(|c| c.nvars() == nvars));
        PolyField { nvars, comps }
    }

    pub fn zero(nvars: usize, ndiff: usize) -> Self {
        PolyField { nvars, comps: vec![MultiPoly::zero(nvars); ndiff] }
    }

    /// Radial field `R = Σ x_i ∂/∂x_i`.
    pub fn radial(nvars: usize, ndiff: usize) -> Self {
        PolyField { nvars, comps: (0..ndiff).map(|i| MultiPoly::var(nvars, i)).collect() }
    }

    /// Constant coordinate field `∂/∂x_i`.
    pub fn coordinate(nvars: usize, ndiff: usize, i: usize) -> Self {
        let mut v = PolyField::zero(nvars, ndiff);
        v.comps[i] = MultiPoly::one(nvars);
        v
    }

    /// Constant field with the given components.
    pub fn constant(nvars: usize, c: &[Scalar]) -> Self {
        PolyField { nvars, comps: c.iter().map(|s| MultiPoly::constant(nvars, s.clone())).collect() }
    }

    /// Linear field of a matrix: `v_A = Σ_i (Σ_j A_ij x_j) ∂/∂x_i`, whose flow is `exp(tA)`.
    ///
    /// Note `[v_A, v_B] = -v_{[A,B]}`.
    pub fn linear(a: &Matrix, nvars: usize) -> Self {
        assert!(a.is_square());
        let n = a.rows();
        PolyField { nvars, comps: (0..n).map(|i| MultiPoly::linear(nvars, a.row(i))).collect() }
    }

    /// Matrix of a linear field (inverse of [`PolyField::linear`]).
    pub fn to_matrix(&self) -> Option<Matrix> {
        let n = self.ndiff();
        let mut m = Matrix::zeros(n, n);
        for (i, c) in self.comps.iter().enumerate() {
            for (mono, s) in c.terms() {
                if mono.degree() != 1 {
                    return None;
                }
                let j = mono.exps().iter().position(|&e| e == 1).unwrap();
                if j >= n {
                    return None;
                }
                m.set(i, j, s.clone());
            }
        }
        Some(m)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ndiff(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &MultiPoly {
        &self.comps[i]
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.comps
    }

    /// Derivation `v(f) = Σ v_i ∂f/∂x_i`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero(self.nvars);
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() && f.involves(i) {
                acc = &acc + &(c * &f.derivative(i));
            }
        }
        acc
    }

    /// Vector-field bracket `[self, o]`.
    pub fn bracket(&self, o: &PolyField) -> PolyField {
        let comps = (0..self.ndiff()).map(|i| &self.apply(&o.comps[i]) - &o.apply(&self.comps[i])).collect();
        PolyField { nvars: self.nvars, comps }
    }

    pub fn scale(&self, c: &Scalar) -> PolyField {
        PolyField { nvars: self.nvars, comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn add(&self, o: &PolyField) -> PolyField {
        PolyField { nvars: self.nvars, comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn with_nvars(&self, nvars: usize) -> PolyField {
        PolyField {
            nvars,
            comps: self.comps.iter().map(|c| if nvars >= self.nvars { c.extend_vars(nvars) } else { c.restrict_vars(nvars) }).collect(),
        }
    }
}
