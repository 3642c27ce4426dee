use num_complex::Complex64;

use crate::closed_forms::{HamiltonianKind, SystemParams};
use crate::error::{Error, Result};
use crate::fock::{coherent_vector, normal_ordered_shift, number_operator, ComplexMatrix, ComplexVector, FockSpace};

const STATE_NORM_TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Vector on internal ⊗ motional, laid out as `[g-block | e-block]`, each
/// block of length `N + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState {
    vector: ComplexVector,
    block: usize,
}

impl ProductState {
    pub fn new(vector: ComplexVector, space: FockSpace) -> Result<Self> {
        let block = space.dim();
        if vector.dim() != 2 * block {
            return Err(Error::Contract(format!(
                "product state has dimension {}, expected {}",
                vector.dim(),
                2 * block
            )));
        }
        let norm = vector.norm();
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::Contract(format!("product state norm {norm} is not 1")));
        }
        Ok(Self { vector, block })
    }

    pub fn from_blocks(g: &ComplexVector, e: &ComplexVector, space: FockSpace) -> Result<Self> {
        let mut data = g.as_slice().to_vec();
        data.extend_from_slice(e.as_slice());
        Self::new(ComplexVector::from_vec(data), space)
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.vector
    }

    pub fn g_block(&self) -> &[Complex64] {
        &self.vector.as_slice()[..self.block]
    }

    pub fn e_block(&self) -> &[Complex64] {
        &self.vector.as_slice()[self.block..]
    }
}

/// `|e, alpha>`, the initial state of the dynamics.
pub fn excited_coherent(alpha: f64, space: FockSpace) -> Result<ProductState> {
    let e = coherent_vector(alpha, space)?;
    ProductState::from_blocks(&ComplexVector::zeros(space.dim()), &e, space)
}

/// `psi_± = (|e, alpha> ± |g, -alpha>) / sqrt 2`.
pub fn basis_vectors(alpha: f64, space: FockSpace) -> Result<(ProductState, ProductState)> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::Domain(format!("alpha must be finite and >= 0, got {alpha}")));
    }
    let s = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let e = coherent_vector(alpha, space)?.scale(s);
    let g = coherent_vector(-alpha, space)?.scale(s);
    let plus = ProductState::from_blocks(&g, &e, space)?;
    let minus = ProductState::from_blocks(&g.scale(c(-1.0, 0.0)), &e, space)?;
    Ok((plus, minus))
}

/// Entries `<psi_i|H|psi_j>` with `psi_1 = psi_+`, `psi_2 = psi_-`.
pub fn project_2x2(h: &ComplexMatrix, plus: &ProductState, minus: &ProductState) -> Result<[[Complex64; 2]; 2]> {
    let n = plus.vector.dim();
    if h.rows() != n || h.cols() != n || minus.vector.dim() != n {
        return Err(Error::Contract(format!(
            "projection dimensions disagree: H is {}x{}, states {} and {}",
            h.rows(),
            h.cols(),
            n,
            minus.vector.dim()
        )));
    }
    let hp = h.matvec(&plus.vector);
    let hm = h.matvec(&minus.vector);
    Ok([
        [plus.vector.inner(&hp), plus.vector.inner(&hm)],
        [minus.vector.inner(&hp), minus.vector.inner(&hm)],
    ])
}

/// Time-independent pieces of the Hamiltonians for one `(params, space)`,
/// so repeated evaluation at many times only reassembles blocks.
#[derive(Clone, Debug)]
pub struct HamiltonianBuilder {
    params: SystemParams,
    space: FockSpace,
    number: ComplexMatrix,
    d_minus: ComplexMatrix,
    d_plus: ComplexMatrix,
    /// `(Omega / 2) e^{-eta^2/2}`
    coupling: f64,
}

impl HamiltonianBuilder {
    pub fn new(params: &SystemParams, space: FockSpace) -> Result<Self> {
        params.validate()?;
        let minus = normal_ordered_shift(params.eta, -1, space)?;
        // D_+ = D_-^dag holds exactly in the truncated algebra; taking the
        // adjoint keeps the drive Hermitian to the last bit.
        let d_plus = minus.matrix.adjoint();
        Ok(Self {
            params: *params,
            space,
            number: number_operator(space),
            d_minus: minus.matrix,
            d_plus,
            coupling: 0.5 * params.rabi_ratio * minus.scalar,
        })
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    /// `D_- e^{it} + D_+ e^{-it}`
    fn drive(&self, t: f64) -> ComplexMatrix {
        let mut x = self.d_minus.scale(Complex64::from_polar(1.0, t));
        x.add_scaled(Complex64::from_polar(1.0, -t), &self.d_plus);
        x
    }

    fn scaled_identity(&self, s: f64) -> ComplexMatrix {
        ComplexMatrix::identity(self.space.dim()).scale_real(s)
    }

    pub fn rotated(&self, kind: HamiltonianKind, t: f64) -> Result<ComplexMatrix> {
        check_time(t)?;
        let p = &self.params;
        let vib = self.number.scale_real(p.nu_ratio);
        let flip = self.scaled_identity(-p.omega_a_ratio);
        let h = match kind {
            HamiltonianKind::Full => {
                let inter = self.drive(t).scale_real(self.coupling);
                assemble(&vib.sub(&inter), &flip, &flip, &vib.add(&inter))
            }
            HamiltonianKind::Rwa => {
                // sigma_- = |g><e| sits in the (g, e) block.
                let ge = flip.add(&self.d_minus.scale(Complex64::from_polar(self.coupling, t)));
                let eg = flip.add(&self.d_plus.scale(Complex64::from_polar(self.coupling, -t)));
                assemble(&vib, &ge, &eg, &vib)
            }
        };
        certified(h, kind.as_str())
    }

    pub fn lab(&self, t: f64) -> Result<ComplexMatrix> {
        check_time(t)?;
        let p = &self.params;
        let vib = self.number.scale_real(p.nu_ratio);
        let split = self.scaled_identity(p.omega_a_ratio);
        let inter = self.drive(t).scale_real(self.coupling);
        certified(assemble(&vib.sub(&split), &inter, &inter, &vib.add(&split)), "lab")
    }
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("time must be finite, got {t}")));
    }
    Ok(())
}

fn certified(h: ComplexMatrix, label: &str) -> Result<ComplexMatrix> {
    h.certify_hermitian().map_err(|e| {
        Error::Internal(format!(
            "{label} Hamiltonian builder produced a non-Hermitian matrix: {e}"
        ))
    })?;
    Ok(h)
}

/// `[[gg, ge], [eg, ee]]` on internal ⊗ motional.
fn assemble(gg: &ComplexMatrix, ge: &ComplexMatrix, eg: &ComplexMatrix, ee: &ComplexMatrix) -> ComplexMatrix {
    let d = gg.rows();
    ComplexMatrix::from_fn(2 * d, 2 * d, |i, j| match (i < d, j < d) {
        (true, true) => gg[(i, j)],
        (true, false) => ge[(i, j - d)],
        (false, true) => eg[(i - d, j)],
        (false, false) => ee[(i - d, j - d)],
    })
}

fn prepare(params: &SystemParams, space: FockSpace) -> Result<HamiltonianBuilder> {
    params.validate()?;
    space.check_alpha(params.alpha)?;
    HamiltonianBuilder::new(params, space)
}

pub fn build_rotated_hamiltonian(
    kind: HamiltonianKind,
    params: &SystemParams,
    t: f64,
    space: FockSpace,
) -> Result<ComplexMatrix> {
    prepare(params, space)?.rotated(kind, t)
}

pub fn build_lab_hamiltonian(params: &SystemParams, t: f64, space: FockSpace) -> Result<ComplexMatrix> {
    prepare(params, space)?.lab(t)
}

/// Internal-state rotation applied as `R ⊗ I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rotation {
    /// `exp(-i (pi/4) sigma_y)` in the `(g, e)` matrix convention: maps
    /// `sigma_z -> -sigma_x` and `sigma_x -> sigma_z`.
    QuarterTurn,
    /// `exp(i (pi/2) sigma_y) = i sigma_y`, the half-turn as written in the
    /// source. It sends `sigma_z -> -sigma_z` and cannot produce the rotated form.
    HalfTurnAsPrinted,
}

impl Rotation {
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        match self {
            Rotation::QuarterTurn => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                [[c(s, 0.0), c(-s, 0.0)], [c(s, 0.0), c(s, 0.0)]]
            }
            // i * [[0, -i], [i, 0]]
            Rotation::HalfTurnAsPrinted => [[c(0.0, 0.0), c(1.0, 0.0)], [c(-1.0, 0.0), c(0.0, 0.0)]],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Rotation::QuarterTurn => "quarter_turn",
            Rotation::HalfTurnAsPrinted => "half_turn_as_printed",
        }
    }
}

/// `(R ⊗ I) M (R ⊗ I)^†` for a block matrix `M` on internal ⊗ motional.
pub fn conjugate_internal(r: [[Complex64; 2]; 2], m: &ComplexMatrix) -> ComplexMatrix {
    let d = m.rows() / 2;
    ComplexMatrix::from_fn(2 * d, 2 * d, |i, j| {
        let (a, x) = (i / d, i % d);
        let (b, y) = (j / d, j % d);
        let mut acc = c(0.0, 0.0);
        for (cc, row) in r[a].iter().enumerate() {
            if *row == c(0.0, 0.0) {
                continue;
            }
            for (dd, col) in r[b].iter().enumerate() {
                acc += row * m[(cc * d + x, dd * d + y)] * col.conj();
            }
        }
        acc
    })
}

/// Applies `R^† ⊗ I` to a product state.
pub fn rotate_back(r: [[Complex64; 2]; 2], psi: &ComplexVector) -> ComplexVector {
    let d = psi.dim() / 2;
    let s = psi.as_slice();
    let mut out = vec![c(0.0, 0.0); 2 * d];
    for x in 0..d {
        let (g, e) = (s[x], s[d + x]);
        out[x] = r[0][0].conj() * g + r[1][0].conj() * e;
        out[d + x] = r[0][1].conj() * g + r[1][1].conj() * e;
    }
    ComplexVector::from_vec(out)
}

/// `max|R H_lab R^† - H_rot| / max|H_rot|` for the full Hamiltonian.
pub fn rotation_residual(builder: &HamiltonianBuilder, rotation: Rotation, t: f64) -> Result<f64> {
    let lab = builder.lab(t)?;
    let rotated = builder.rotated(HamiltonianKind::Full, t)?;
    let mapped = conjugate_internal(rotation.matrix(), &lab);
    let scale = rotated.max_abs().max(f64::MIN_POSITIVE);
    Ok(mapped.max_abs_diff(&rotated) / scale)
}
