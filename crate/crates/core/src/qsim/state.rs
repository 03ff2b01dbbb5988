//! Dense statevector over a tensor product of mixed-dimension registers.
//!
//! Registers are listed most-significant first: the amplitude index of a
//! digit string (x_0, ..., x_{k-1}) is x_0 * stride_0 + ... with
//! stride_i = prod of the dimensions to the right. Field registers carry
//! dimension q, ancilla qubits dimension 2; gates below take an optional
//! control qubit so the phase-estimation circuit can condition every
//! operation on an ancilla.

use num_complex::Complex64;

use crate::characters::{char_eval, unit_root, Character};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// Hard guard on the amplitude count.
pub const MAX_STATE_AMPS: u128 = 1 << 24;

#[derive(Clone, Debug)]
pub struct StateVector {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The basis state |digits[0], digits[1], ...>.
    pub fn basis(dims: &[usize], digits: &[usize]) -> Result<Self> {
        let mut st = StateVector::zeroed(dims)?;
        if digits.len() != dims.len() {
            return Err(Error::DimensionMismatch {
                reg: digits.len(),
                found: digits.len(),
                expected: dims.len(),
            });
        }
        let mut idx = 0usize;
        for (reg, (&d, &dim)) in digits.iter().zip(dims).enumerate() {
            if d >= dim {
                return Err(Error::DimensionMismatch {
                    reg,
                    found: d,
                    expected: dim,
                });
            }
            idx = idx * dim + d;
        }
        st.amps[idx] = Complex64::new(1.0, 0.0);
        Ok(st)
    }

    /// An all-zero amplitude vector (not normalized; fill before use).
    fn zeroed(dims: &[usize]) -> Result<Self> {
        let mut total: u128 = 1;
        for &d in dims {
            assert!(d >= 2, "registers need dimension >= 2");
            total = total.saturating_mul(d as u128);
        }
        if total > MAX_STATE_AMPS {
            return Err(Error::StateTooLarge { amps: total });
        }
        Ok(StateVector {
            dims: dims.to_vec(),
            amps: vec![Complex64::new(0.0, 0.0); total as usize],
        })
    }

    /// Tensor product of states, in register order.
    pub fn product(factors: &[&StateVector]) -> Result<Self> {
        let dims: Vec<usize> = factors.iter().flat_map(|f| f.dims.iter().copied()).collect();
        let mut out = StateVector::zeroed(&dims)?;
        out.amps[0] = Complex64::new(1.0, 0.0);
        let mut filled = 1usize;
        for f in factors {
            let block = f.amps.len();
            // Expand the accumulated prefix by each factor in turn.
            let mut next = vec![Complex64::new(0.0, 0.0); filled * block];
            for (i, a) in out.amps[..filled].iter().enumerate() {
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for (j, b) in f.amps.iter().enumerate() {
                    next[i * block + j] = a * b;
                }
            }
            out.amps[..filled * block].copy_from_slice(&next);
            filled *= block;
        }
        Ok(out)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// <self|other>.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch {
                reg: 0,
                found: other.amps.len(),
                expected: self.amps.len(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    fn stride(&self, reg: usize) -> usize {
        self.dims[reg + 1..].iter().product()
    }

    fn digit(&self, idx: usize, reg: usize, stride: usize) -> usize {
        idx / stride % self.dims[reg]
    }

    fn check_reg(&self, reg: usize, dim: usize) -> Result<()> {
        match self.dims.get(reg) {
            Some(&d) if d == dim => Ok(()),
            Some(&d) => Err(Error::DimensionMismatch {
                reg,
                found: d,
                expected: dim,
            }),
            None => Err(Error::DimensionMismatch {
                reg,
                found: 0,
                expected: dim,
            }),
        }
    }

    /// Multiply every amplitude by a fixed phase.
    pub fn global_phase(&mut self, phase: Complex64) {
        for a in &mut self.amps {
            *a *= phase;
        }
    }

    /// Phase on the |1> level of a qubit register.
    pub fn phase_on_one(&mut self, reg: usize, phase: Complex64) -> Result<()> {
        self.check_reg(reg, 2)?;
        let stride = self.stride(reg);
        for idx in 0..self.amps.len() {
            if self.digit(idx, reg, stride) == 1 {
                self.amps[idx] *= phase;
            }
        }
        Ok(())
    }

    /// Phase applied when both qubit registers read 1.
    pub fn phase_on_pair(&mut self, reg_a: usize, reg_b: usize, phase: Complex64) -> Result<()> {
        self.check_reg(reg_a, 2)?;
        self.check_reg(reg_b, 2)?;
        let sa = self.stride(reg_a);
        let sb = self.stride(reg_b);
        for idx in 0..self.amps.len() {
            if self.digit(idx, reg_a, sa) == 1 && self.digit(idx, reg_b, sb) == 1 {
                self.amps[idx] *= phase;
            }
        }
        Ok(())
    }

    /// Swap two qubit registers.
    pub fn swap_qubits(&mut self, reg_a: usize, reg_b: usize) -> Result<()> {
        self.check_reg(reg_a, 2)?;
        self.check_reg(reg_b, 2)?;
        if reg_a == reg_b {
            return Ok(());
        }
        let sa = self.stride(reg_a);
        let sb = self.stride(reg_b);
        for idx in 0..self.amps.len() {
            if self.digit(idx, reg_a, sa) == 1 && self.digit(idx, reg_b, sb) == 0 {
                let partner = idx - sa + sb;
                self.amps.swap(idx, partner);
            }
        }
        Ok(())
    }

    /// Dense single-register transform: new_slice = mat * old_slice, with
    /// `mat` row-major d x d. Optionally conditioned on a control qubit.
    pub fn apply_matrix(
        &mut self,
        reg: usize,
        mat: &[Complex64],
        ctrl: Option<usize>,
    ) -> Result<()> {
        let d = *self.dims.get(reg).ok_or(Error::DimensionMismatch {
            reg,
            found: 0,
            expected: 0,
        })?;
        assert_eq!(mat.len(), d * d, "matrix shape must match the register");
        if let Some(c) = ctrl {
            self.check_reg(c, 2)?;
            assert_ne!(c, reg, "control must differ from the target register");
        }
        let stride = self.stride(reg);
        let ctrl_stride = ctrl.map(|c| self.stride(c));
        let outer = self.amps.len() / (d * stride);
        let mut scratch = vec![Complex64::new(0.0, 0.0); d];
        for o in 0..outer {
            for inner in 0..stride {
                let base = o * d * stride + inner;
                if let (Some(c), Some(cs)) = (ctrl, ctrl_stride) {
                    if self.digit(base, c, cs) != 1 {
                        continue;
                    }
                }
                for (x, s) in scratch.iter_mut().enumerate() {
                    *s = self.amps[base + x * stride];
                }
                for y in 0..d {
                    let mut acc = Complex64::new(0.0, 0.0);
                    let row = &mat[y * d..(y + 1) * d];
                    for (x, s) in scratch.iter().enumerate() {
                        acc += row[x] * s;
                    }
                    self.amps[base + y * stride] = acc;
                }
            }
        }
        Ok(())
    }

    /// Hadamard on a qubit register.
    pub fn hadamard(&mut self, reg: usize) -> Result<()> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mat = [
            Complex64::new(h, 0.0),
            Complex64::new(h, 0.0),
            Complex64::new(h, 0.0),
            Complex64::new(-h, 0.0),
        ];
        self.apply_matrix(reg, &mat, None)
    }

    /// Fourier transform over the field on one register:
    /// |x> -> q^{-1/2} sum_y w_p^{Tr(xy)} |y>. `inverse` applies the adjoint.
    pub fn qft_field(&mut self, reg: usize, ctx: &FieldCtx, inverse: bool) -> Result<()> {
        self.qft_field_ctrl(reg, ctx, inverse, None)
    }

    pub fn qft_field_ctrl(
        &mut self,
        reg: usize,
        ctx: &FieldCtx,
        inverse: bool,
        ctrl: Option<usize>,
    ) -> Result<()> {
        let q = ctx.q() as usize;
        self.check_reg(reg, q)?;
        let mat = qft_field_matrix(ctx, inverse);
        self.apply_matrix(reg, &mat, ctrl)
    }

    /// The reversible two-register map |x, y> -> |x, y / x^b> on the
    /// nonzero sector; identity where x = 0 or y = 0.
    pub fn mul_gate(&mut self, x_reg: usize, y_reg: usize, ctx: &FieldCtx, b: i64) -> Result<()> {
        self.mul_gate_ctrl(x_reg, y_reg, ctx, b, None)
    }

    pub fn mul_gate_ctrl(
        &mut self,
        x_reg: usize,
        y_reg: usize,
        ctx: &FieldCtx,
        b: i64,
        ctrl: Option<usize>,
    ) -> Result<()> {
        let q = ctx.q() as usize;
        self.check_reg(x_reg, q)?;
        self.check_reg(y_reg, q)?;
        assert_ne!(x_reg, y_reg, "source and target registers must differ");
        if let Some(c) = ctrl {
            self.check_reg(c, 2)?;
        }
        let sx = self.stride(x_reg);
        let sy = self.stride(y_reg);
        let ctrl_stride = ctrl.map(|c| self.stride(c));
        let old = self.amps.clone();
        for (idx, slot) in self.amps.iter_mut().enumerate() {
            if let Some(cs) = ctrl_stride {
                if idx / cs % 2 != 1 {
                    *slot = old[idx];
                    continue;
                }
            }
            let x = idx / sx % q;
            let z = idx / sy % q;
            // Output |x, z| receives input |x, z * x^b|.
            let src = if x == 0 || z == 0 {
                idx
            } else {
                let zsrc = ctx.mul_idx(z as u32, ctx.pow_i_idx(x as u32, b)) as usize;
                idx - z * sy + zsrc * sy
            };
            *slot = old[src];
        }
        Ok(())
    }

    /// The reversible one-register map |y> -> |y * a> (a nonzero);
    /// identity at y = 0.
    pub fn scalar_mul_gate(&mut self, reg: usize, ctx: &FieldCtx, a: FieldElement) -> Result<()> {
        self.scalar_mul_gate_ctrl(reg, ctx, a, None)
    }

    pub fn scalar_mul_gate_ctrl(
        &mut self,
        reg: usize,
        ctx: &FieldCtx,
        a: FieldElement,
        ctrl: Option<usize>,
    ) -> Result<()> {
        let q = ctx.q() as usize;
        self.check_reg(reg, q)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = ctrl {
            self.check_reg(c, 2)?;
        }
        let a_inv = ctx.inv(a)?;
        let s = self.stride(reg);
        let ctrl_stride = ctrl.map(|c| self.stride(c));
        let old = self.amps.clone();
        for (idx, slot) in self.amps.iter_mut().enumerate() {
            if let Some(cs) = ctrl_stride {
                if idx / cs % 2 != 1 {
                    *slot = old[idx];
                    continue;
                }
            }
            let z = idx / s % q;
            let src = if z == 0 {
                idx
            } else {
                let zsrc = ctx.mul_idx(z as u32, a_inv.index() as u32) as usize;
                idx - z * s + zsrc * s
            };
            *slot = old[src];
        }
        Ok(())
    }

    /// Probabilities of qubit outcomes read from `regs`, where regs[j]
    /// holds bit j (LSB first) of the outcome index.
    pub fn qubit_distribution(&self, regs: &[usize]) -> Result<Vec<f64>> {
        let mut strides = Vec::with_capacity(regs.len());
        for &r in regs {
            self.check_reg(r, 2)?;
            strides.push(self.stride(r));
        }
        let mut probs = vec![0.0f64; 1 << regs.len()];
        for (idx, a) in self.amps.iter().enumerate() {
            let w = a.norm_sqr();
            if w == 0.0 {
                continue;
            }
            let mut outcome = 0usize;
            for (j, &s) in strides.iter().enumerate() {
                outcome |= (idx / s % 2) << j;
            }
            probs[outcome] += w;
        }
        Ok(probs)
    }

    /// Debug dump as a JSON array of [re, im] pairs.
    pub fn to_json(&self) -> String {
        let parts: Vec<String> = self
            .amps
            .iter()
            .map(|a| format!("[{},{}]", a.re, a.im))
            .collect();
        format!("[{}]", parts.join(","))
    }
}

/// The q x q Fourier kernel w_p^{Tr(xy)} / sqrt(q) (or its adjoint).
pub fn qft_field_matrix(ctx: &FieldCtx, inverse: bool) -> Vec<Complex64> {
    let q = ctx.q() as usize;
    let p = ctx.p();
    let scale = 1.0 / (q as f64).sqrt();
    let mut mat = vec![Complex64::new(0.0, 0.0); q * q];
    for y in 0..q {
        for x in 0..q {
            let t = ctx.trace_idx(ctx.mul_idx(x as u32, y as u32));
            let w = unit_root(p, if inverse { -(t as i64) } else { t as i64 });
            mat[y * q + x] = scale * w;
        }
    }
    mat
}

/// The chi state |chi^alpha> = (q-1)^{-1/2} sum_x chi^alpha(x) |x> on a
/// fresh q-dimensional register; the amplitude at |0> is zero.
pub fn make_chi_state(ctx: &FieldCtx, alpha: i64) -> StateVector {
    let q = ctx.q() as usize;
    let chi = Character::new(ctx, alpha);
    let scale = 1.0 / ((q - 1) as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); q];
    for x in ctx.elements() {
        if x.is_zero() {
            continue;
        }
        amps[x.index() as usize] =
            scale * char_eval(ctx, chi, x).expect("character and element share the context");
    }
    StateVector {
        dims: vec![q],
        amps,
    }
}
