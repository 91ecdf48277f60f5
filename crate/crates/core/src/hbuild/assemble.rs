//! Assembly of the distilled Hamiltonian on the `3(N-1)`-dimensional space.

use num_complex::Complex64;
use std::io::{Read, Write};

use super::weights::{reference_weights, weight_table, TensorWeights};
use crate::error::{invalid, IrdError, Result};
use crate::irreps::{cg_coefficient, ladder, BasisLayout, DistilledAmplitudes, DistilledState, HalfInt};
use crate::model::ModelParams;

/// Real-symmetric distilled Hamiltonian in sparse row storage (both triangles).
#[derive(Debug, Clone)]
pub struct DistilledHamiltonian {
    params: ModelParams,
    layout: BasisLayout,
    weights: TensorWeights,
    rows: Vec<Vec<(usize, f64)>>,
}

pub fn assemble(params: &ModelParams, amps: &DistilledAmplitudes) -> Result<DistilledHamiltonian> {
    let w = weight_table(params, amps)?;
    DistilledHamiltonian::from_weights(params, &w)
}

/// Block-diagonal reference `H_D(s, 0)`: collective kernel, no cross-irrep coupling.
pub fn assemble_reference(params: &ModelParams, amps: &DistilledAmplitudes) -> Result<DistilledHamiltonian> {
    let w = reference_weights(params.n(), amps)?;
    DistilledHamiltonian::from_weights(params, &w)
}

impl DistilledHamiltonian {
    pub fn from_weights(params: &ModelParams, w: &TensorWeights) -> Result<Self> {
        let n = params.n();
        if w.n != n {
            return Err(invalid(format!("weights built for N = {}, parameters have N = {n}", w.n)));
        }
        let layout = BasisLayout::new(n)?;
        let s = params.s();
        let field = 0.5 * (s - 1.0);
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); layout.dim()];
        let push = |rows: &mut Vec<Vec<(usize, f64)>>, i: usize, j: usize, v: f64| {
            if v != 0.0 {
                rows[i].push((j, v));
                if i != j {
                    rows[j].push((i, v));
                }
            }
        };
        for d in 0..3 {
            let j = layout.spin(d);
            let dim = (2 * j + 1) as f64;
            for d2 in d..3 {
                let j2 = layout.spin(d2);
                let f2 = w.f2[d][d2];
                for m in -j2..=j2 {
                    let mut v = 0.0;
                    if d == d2 {
                        v += w.f0[d] / dim.sqrt();
                    }
                    if f2 != 0.0 {
                        let c = cg_coefficient(
                            HalfInt::int(j2),
                            HalfInt::int(m),
                            HalfInt::TWO,
                            HalfInt::ZERO,
                            HalfInt::int(j),
                            HalfInt::int(m),
                        )?;
                        v += f2 * (5.0 / dim).sqrt() * c;
                    }
                    let (a, b) = (layout.flat(d, m).unwrap(), layout.flat(d2, m).unwrap());
                    push(&mut rows, a, b, s * v);
                }
            }
            for m in -j..j {
                let (a, b) = (layout.flat(d, m).unwrap(), layout.flat(d, m + 1).unwrap());
                push(&mut rows, a, b, field * ladder(j, m));
            }
        }
        for r in rows.iter_mut() {
            r.sort_by_key(|e| e.0);
        }
        let h = Self { params: *params, layout, weights: *w, rows };
        if h.rows.iter().flatten().any(|e| !e.1.is_finite()) {
            return Err(IrdError::Numerical("non-finite Hamiltonian element".into()));
        }
        Ok(h)
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }
    pub fn layout(&self) -> BasisLayout {
        self.layout
    }
    pub fn weights(&self) -> &TensorWeights {
        &self.weights
    }
    pub fn dim(&self) -> usize {
        self.layout.dim()
    }
    /// Nonzero entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn element(&self, i: usize, j: usize) -> f64 {
        self.rows[i].iter().find(|e| e.0 == j).map_or(0.0, |e| e.1)
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; d * d];
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, v) in r {
                out[i * d + j] = v;
            }
        }
        out
    }

    pub fn apply_real(&self, x: &[f64]) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().map(|&(j, v)| v * x[j]).sum()).collect()
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.rows.iter().map(|r| r.iter().map(|&(j, v)| x[j] * v).sum()).collect()
    }

    pub fn apply_state(&self, psi: &DistilledState) -> DistilledState {
        DistilledState::from_amplitudes(self.layout, self.apply(psi.amplitudes())).expect("dimension preserved")
    }

    pub fn expectation(&self, psi: &DistilledState) -> f64 {
        let h = self.apply(psi.amplitudes());
        psi.amplitudes().iter().zip(&h).map(|(a, b)| (a.conj() * b).re).sum()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.element(i, i)).sum()
    }

    /// Gershgorin bound on the spectral radius.
    pub fn radius_bound(&self) -> f64 {
        self.rows.iter().map(|r| r.iter().map(|e| e.1.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Entry-wise difference `self - other` as a new operator on the same space.
    pub fn difference(&self, other: &DistilledHamiltonian) -> Result<DistilledHamiltonian> {
        if self.dim() != other.dim() {
            return Err(invalid("dimension mismatch"));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut out: Vec<(usize, f64)> = a.clone();
                for &(j, v) in b {
                    match out.iter_mut().find(|e| e.0 == j) {
                        Some(e) => e.1 -= v,
                        None => out.push((j, -v)),
                    }
                }
                out.retain(|e| e.1 != 0.0);
                out.sort_by_key(|e| e.0);
                out
            })
            .collect();
        Ok(Self { params: self.params, layout: self.layout, weights: self.weights, rows })
    }

    /// Same operator plus `c` times the identity.
    pub fn shifted(&self, c: f64) -> DistilledHamiltonian {
        let mut out = self.clone();
        for (i, r) in out.rows.iter_mut().enumerate() {
            match r.iter_mut().find(|e| e.0 == i) {
                Some(e) => e.1 += c,
                None => r.push((i, c)),
            }
            r.sort_by_key(|e| e.0);
        }
        out
    }

    /// Dump as `"IRDH"`, version `u32`, `N` as `u64`, then the upper triangle
    /// row by row as little-endian `f64`.
    pub fn write_dump<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(DUMP_MAGIC)?;
        out.write_all(&DUMP_VERSION.to_le_bytes())?;
        out.write_all(&(self.params.n() as u64).to_le_bytes())?;
        let d = self.dim();
        for i in 0..d {
            for j in i..d {
                out.write_all(&self.element(i, j).to_le_bytes())?;
            }
        }
        Ok(())
    }
}

pub const DUMP_MAGIC: &[u8; 4] = b"IRDH";
pub const DUMP_VERSION: u32 = 1;

/// Read a dump back as `(N, row-major dense matrix)`.
pub fn read_dump<R: Read>(mut input: R) -> Result<(usize, Vec<f64>)> {
    let mut head = [0u8; 16];
    input.read_exact(&mut head)?;
    if &head[0..4] != DUMP_MAGIC {
        return Err(invalid("not an IRDH dump"));
    }
    let version = u32::from_le_bytes(head[4..8].try_into().unwrap());
    if version != DUMP_VERSION {
        return Err(invalid(format!("unsupported dump version {version}")));
    }
    let n = u64::from_le_bytes(head[8..16].try_into().unwrap()) as usize;
    let d = BasisLayout::new(n)?.dim();
    let mut m = vec![0.0; d * d];
    let mut buf = [0u8; 8];
    for i in 0..d {
        for j in i..d {
            input.read_exact(&mut buf)?;
            let v = f64::from_le_bytes(buf);
            m[i * d + j] = v;
            m[j * d + i] = v;
        }
    }
    Ok((n, m))
}
