//! Density operators and their canonical vectorisation.
//!
//! An `l x l` density matrix is flattened into an `l^2` column whose slots are
//! ordered as: all populations `rho_00 .. rho_{l-1,l-1}`, then for each row
//! `k = 0 .. l-2` the upper entries `rho_{k,k+1} .. rho_{k,l-1}` immediately
//! followed by their conjugate partners `rho_{k+1,k} .. rho_{l-1,k}`.
//! For `l = 2` this is `[rho00, rho11, rho01, rho10]` and for `l = 3`
//! `[rho00, rho11, rho22, rho01, rho02, rho10, rho20, rho12, rho21]`.

use nalgebra::{DMatrix, DVector, RowDVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;
pub type CRow = RowDVector<C64>;

/// Entrywise Hermiticity tolerance for constructed matrices.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Trace tolerance for constructed states.
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const EIGENVALUE_FLOOR: f64 = -1e-9;
/// Tolerance for states produced by propagation.
pub const PROPAGATED_TOL: f64 = 1e-8;
/// Conjugate-pair consistency required by [`devectorize`].
pub const PAIR_TOL: f64 = 1e-9;
/// Imaginary residue accepted on an expectation value.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;

/// Canonical slot ordering for an `l`-level system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotLayout {
    dim: usize,
    slots: Vec<(usize, usize)>,
    // (n, m) -> slot, row-major over the l x l matrix
    index: Vec<usize>,
}

impl SlotLayout {
    pub fn new(dim: usize) -> Self {
        let mut slots = Vec::with_capacity(dim * dim);
        slots.extend((0..dim).map(|n| (n, n)));
        for k in 0..dim.saturating_sub(1) {
            slots.extend((k + 1..dim).map(|m| (k, m)));
            slots.extend((k + 1..dim).map(|m| (m, k)));
        }
        let mut index = vec![0; dim * dim];
        for (s, &(n, m)) in slots.iter().enumerate() {
            index[n * dim + m] = s;
        }
        SlotLayout { dim, slots, index }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of slots, `l^2`.
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Matrix position `(n, m)` held by slot `k`.
    pub fn slot(&self, k: usize) -> (usize, usize) {
        self.slots[k]
    }

    pub fn slots(&self) -> &[(usize, usize)] {
        &self.slots
    }

    pub fn index_of(&self, n: usize, m: usize) -> usize {
        self.index[n * self.dim + m]
    }

    /// Slot holding the conjugate partner of slot `k` (itself for populations).
    pub fn partner(&self, k: usize) -> usize {
        let (n, m) = self.slots[k];
        self.index_of(m, n)
    }

    pub fn is_population(&self, k: usize) -> bool {
        let (n, m) = self.slots[k];
        n == m
    }

    /// `(upper, lower)` slot pairs, upper meaning `n < m`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, &(n, m))| n < m)
            .map(move |(k, &(n, m))| (k, self.index_of(m, n)))
    }

    /// Row vector `t` with `t . vec(rho) = Tr(rho)`.
    pub fn trace_row(&self) -> CRow {
        CRow::from_fn(self.len(), |_, k| {
            if self.is_population(k) {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Map `T` taking a conjugate-paired vector `x` to real coordinates `y = T x`:
    /// populations keep their real part, an upper slot carries `Re rho_nm` and
    /// its partner slot `Im rho_nm`.
    pub fn realification(&self) -> CMatrix {
        let len = self.len();
        let mut t = CMatrix::zeros(len, len);
        for k in 0..len {
            if self.is_population(k) {
                t[(k, k)] = C64::new(1.0, 0.0);
            }
        }
        for (p, q) in self.pairs() {
            t[(p, p)] = C64::new(0.5, 0.0);
            t[(p, q)] = C64::new(0.5, 0.0);
            t[(q, p)] = C64::new(0.0, -0.5);
            t[(q, q)] = C64::new(0.0, 0.5);
        }
        t
    }

    /// Inverse of [`SlotLayout::realification`].
    pub fn complexification(&self) -> CMatrix {
        let len = self.len();
        let mut t = CMatrix::zeros(len, len);
        for k in 0..len {
            if self.is_population(k) {
                t[(k, k)] = C64::new(1.0, 0.0);
            }
        }
        for (p, q) in self.pairs() {
            t[(p, p)] = C64::new(1.0, 0.0);
            t[(p, q)] = C64::new(0.0, 1.0);
            t[(q, p)] = C64::new(1.0, 0.0);
            t[(q, q)] = C64::new(0.0, -1.0);
        }
        t
    }
}

/// Side length `l` of a vectorised state of length `len`, if `len` is a perfect square.
pub fn side_length(len: usize) -> Option<usize> {
    let l = (len as f64).sqrt().round() as usize;
    (l * l == len).then_some(l)
}

/// An `l x l` Hermitian matrix standing for a (possibly drifted) quantum state.
///
/// Construction only enforces squareness and Hermiticity; trace and positivity are
/// reported by [`DensityMatrix::validate`] so that propagated states can be inspected.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Validation {
                what: "density matrix",
                detail: format!("not square ({}x{})", matrix.nrows(), matrix.ncols()),
            });
        }
        let defect = hermiticity_defect(&matrix);
        if defect > HERMITICITY_TOL {
            return Err(Error::Validation {
                what: "density matrix",
                detail: format!("not Hermitian (defect {defect:e})"),
            });
        }
        Ok(DensityMatrix { matrix })
    }

    /// Projector onto energy eigenstate `level`.
    pub fn pure_level(dim: usize, level: usize) -> Result<Self> {
        if level >= dim {
            return Err(Error::Parameter {
                name: "level",
                detail: format!("{level} is out of range for a {dim}-level system"),
            });
        }
        let mut m = CMatrix::zeros(dim, dim);
        m[(level, level)] = C64::new(1.0, 0.0);
        Ok(DensityMatrix { matrix: m })
    }

    /// `|psi><psi|` for a ket normalised on the way in.
    pub fn from_ket(ket: &CVector) -> Result<Self> {
        let norm = ket.norm();
        if norm == 0.0 {
            return Err(Error::Parameter {
                name: "ket",
                detail: "zero vector".into(),
            });
        }
        let k = ket / C64::new(norm, 0.0);
        Ok(DensityMatrix {
            matrix: &k * k.adjoint(),
        })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix {
            matrix: CMatrix::identity(dim, dim) / C64::new(dim as f64, 0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn validate(&self) -> ValidityReport {
        validate(self)
    }
}

/// Largest entrywise `|a_nm - conj(a_mn)|`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let mut defect = 0.0_f64;
    for n in 0..m.nrows() {
        for k in n..m.ncols() {
            defect = defect.max((m[(n, k)] - m[(k, n)].conj()).norm());
        }
    }
    defect
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    SymmetricEigen::new(herm).eigenvalues.min()
}

/// `l^2` vectorised density operator in canonical slot order.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorizedState {
    dim: usize,
    values: CVector,
}

impl VectorizedState {
    /// Wraps raw slot values; the length must be a perfect square.
    pub fn from_values(values: CVector) -> Result<Self> {
        let dim = side_length(values.len()).ok_or_else(|| Error::Validation {
            what: "vectorised state",
            detail: format!("length {} is not a perfect square", values.len()),
        })?;
        Ok(VectorizedState { dim, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &CVector {
        &self.values
    }

    pub fn into_values(self) -> CVector {
        self.values
    }

    pub fn layout(&self) -> SlotLayout {
        SlotLayout::new(self.dim)
    }

    /// Largest violation of the conjugate pairing (and of real populations).
    pub fn hermiticity_defect(&self) -> f64 {
        let layout = self.layout();
        let mut defect = 0.0_f64;
        for k in 0..layout.len() {
            if layout.is_population(k) {
                defect = defect.max(self.values[k].im.abs());
            }
        }
        for (p, q) in layout.pairs() {
            defect = defect.max((self.values[p] - self.values[q].conj()).norm());
        }
        defect
    }

    /// `|sum of populations - 1|`.
    pub fn trace_defect(&self) -> f64 {
        let trace: C64 = (0..self.dim).map(|k| self.values[k]).sum();
        (trace - C64::new(1.0, 0.0)).norm()
    }
}

/// Flattens `rho` into canonical slot order.
pub fn vectorize(rho: &DensityMatrix) -> VectorizedState {
    let layout = SlotLayout::new(rho.dim());
    let values = CVector::from_iterator(layout.len(), layout.slots().iter().map(|&(n, m)| rho.matrix[(n, m)]));
    VectorizedState { dim: rho.dim(), values }
}

/// Inverse of [`vectorize`]. Conjugate-pair slots must agree to [`PAIR_TOL`].
pub fn devectorize(x: &VectorizedState) -> Result<DensityMatrix> {
    let defect = x.hermiticity_defect();
    if defect > PAIR_TOL {
        return Err(Error::Validation {
            what: "vectorised state",
            detail: format!("conjugate-pair slots disagree by {defect:e}"),
        });
    }
    let layout = x.layout();
    let l = x.dim;
    let mut m = CMatrix::zeros(l, l);
    for (k, &(n, c)) in layout.slots().iter().enumerate() {
        m[(n, c)] = x.values[k];
    }
    Ok(DensityMatrix { matrix: m })
}

/// Hermitian observable `o` on an `l`-level system.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    matrix: CMatrix,
}

impl Observable {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Validation {
                what: "observable",
                detail: format!("not square ({}x{})", matrix.nrows(), matrix.ncols()),
            });
        }
        let defect = hermiticity_defect(&matrix);
        if defect > HERMITICITY_TOL {
            return Err(Error::Validation {
                what: "observable",
                detail: format!("not Hermitian (defect {defect:e})"),
            });
        }
        Ok(Observable { matrix })
    }

    /// `|level><level|`.
    pub fn projector(dim: usize, level: usize) -> Result<Self> {
        Ok(Observable {
            matrix: DensityMatrix::pure_level(dim, level)?.into_matrix(),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `D = vec(o^T)^T`, so that `D . vectorize(rho) = Tr(rho o)`.
    pub fn measurement_row(&self) -> CRow {
        let layout = SlotLayout::new(self.dim());
        CRow::from_iterator(layout.len(), layout.slots().iter().map(|&(n, m)| self.matrix[(m, n)]))
    }
}

/// `Tr(rho o)`, checked to be real.
pub fn expectation(rho: &DensityMatrix, obs: &Observable) -> Result<f64> {
    if rho.dim() != obs.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: obs.dim(),
            context: "expectation",
        });
    }
    let value = (rho.matrix() * obs.matrix()).trace();
    let tolerance = EXPECTATION_IMAG_TOL * value.re.abs().max(1.0);
    if value.im.abs() > tolerance {
        return Err(Error::ImaginaryResidue {
            quantity: "expectation value",
            residue: value.im.abs(),
            tolerance,
        });
    }
    Ok(value.re)
}

/// Invariant defects of a density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidityReport {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
}

impl ValidityReport {
    /// All three invariants hold at the given Hermiticity/trace tolerance.
    pub fn passes(&self, tolerance: f64) -> bool {
        self.hermiticity_defect <= tolerance
            && self.trace_defect <= tolerance
            && self.min_eigenvalue >= EIGENVALUE_FLOOR
    }

    /// Construction-grade check.
    pub fn is_valid(&self) -> bool {
        self.hermiticity_defect <= HERMITICITY_TOL
            && self.trace_defect <= TRACE_TOL
            && self.min_eigenvalue >= EIGENVALUE_FLOOR
    }
}

pub fn validate(rho: &DensityMatrix) -> ValidityReport {
    let m = rho.matrix();
    ValidityReport {
        hermiticity_defect: hermiticity_defect(m),
        trace_defect: (m.trace() - C64::new(1.0, 0.0)).norm(),
        min_eigenvalue: min_eigenvalue(m),
    }
}

/// Real coordinates of a conjugate-paired vector (see [`SlotLayout::realification`]).
pub fn realify(x: &VectorizedState) -> DVector<f64> {
    let layout = x.layout();
    let mut y = DVector::zeros(layout.len());
    for k in 0..layout.len() {
        if layout.is_population(k) {
            y[k] = x.values[k].re;
        }
    }
    for (p, q) in layout.pairs() {
        y[p] = x.values[p].re;
        y[q] = x.values[p].im;
    }
    y
}
