//! Scar detection on distilled spectra and pairing with exact eigenstates.

use num_complex::Complex64;

use crate::dynamics::Spectrum;
use crate::error::{IrdError, Result};
use crate::irreps::{ln_binomials, scs_amplitudes};
use crate::oracle::{DickeBasis, SymmetrySector};

#[derive(Debug, Clone, PartialEq)]
pub struct ScarRecord {
    pub eigenindex: usize,
    pub energy: f64,
    pub sym_population: f64,
    pub spin_number: f64,
    pub scs_overlap_max: f64,
    pub fidelity: Option<f64>,
}

/// Angular grid: `theta` over `[0, pi]` inclusive, `phi = 2 pi j / phi_points`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngleGrid {
    pub theta_points: usize,
    pub phi_points: usize,
}

impl Default for AngleGrid {
    fn default() -> Self {
        Self { theta_points: 20, phi_points: 40 }
    }
}

impl AngleGrid {
    pub fn points(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.theta_points * self.phi_points);
        for i in 0..self.theta_points {
            let theta = if self.theta_points > 1 {
                std::f64::consts::PI * i as f64 / (self.theta_points - 1) as f64
            } else {
                0.0
            };
            for j in 0..self.phi_points {
                out.push((theta, 2.0 * std::f64::consts::PI * j as f64 / self.phi_points as f64));
            }
        }
        out
    }
}

pub fn detect_scars(spec: &Spectrum) -> Result<Vec<ScarRecord>> {
    detect_scars_with(spec, AngleGrid::default())
}

/// Eigenstates with more than half their weight in the symmetric irrep.
pub fn detect_scars_with(spec: &Spectrum, grid: AngleGrid) -> Result<Vec<ScarRecord>> {
    let layout = spec.layout();
    let sym = layout.block(0);
    let coherent: Vec<Vec<Complex64>> = grid
        .points()
        .into_iter()
        .map(|(t, p)| scs_amplitudes(layout.n(), t, p).map(|s| s.amplitudes()[sym.clone()].to_vec()))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for k in 0..spec.len() {
        let pop = spec.sym_population(k);
        if pop <= 0.5 {
            continue;
        }
        let v = &spec.vector(k)[sym.clone()];
        let best = coherent
            .iter()
            .map(|c| c.iter().zip(v).map(|(a, &b)| a.conj() * b).sum::<Complex64>().norm_sqr())
            .fold(0.0, f64::max);
        out.push(ScarRecord {
            eigenindex: k,
            energy: spec.energy(k),
            sym_population: pop,
            spin_number: spec.spin_number(k),
            scs_overlap_max: best,
            fidelity: None,
        });
    }
    Ok(out)
}

/// An exact eigenstate with majority symmetric weight.
#[derive(Debug, Clone)]
pub struct ExactScar {
    pub sector: usize,
    pub index: usize,
    pub energy: f64,
    pub sym_population: f64,
    pub vector: Vec<f64>,
}

/// Symmetric-irrep weight of a full real vector, by projection onto the `N+1` symmetric Dicke states.
pub fn symmetric_weight(n: usize, v: &[f64]) -> f64 {
    let lb = ln_binomials(n);
    let mut sums = vec![0.0; n + 1];
    for (x, &a) in v.iter().enumerate() {
        sums[x.count_ones() as usize] += a;
    }
    sums.iter().enumerate().map(|(k, s)| s * s * (-lb[k]).exp()).sum()
}

pub fn exact_scar_candidates(n: usize, sectors: &[SymmetrySector]) -> Vec<ExactScar> {
    let mut out = Vec::new();
    for (si, sec) in sectors.iter().enumerate() {
        // Symmetric states are mirror-even.
        if sec.mirror != 1 {
            continue;
        }
        for k in 0..sec.dim() {
            let v = sec.full_eigenvector(k);
            let pop = symmetric_weight(n, &v);
            if pop >= 0.5 {
                out.push(ExactScar {
                    sector: si,
                    index: k,
                    energy: sec.eigenvalues[k],
                    sym_population: pop,
                    vector: v,
                });
            }
        }
    }
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    out
}

#[derive(Debug, Clone)]
pub struct FidelityReport {
    /// `(exact candidate, distilled eigenindex, fidelity)`.
    pub pairs: Vec<(usize, usize, f64)>,
    pub mean: f64,
    pub unpaired_exact: Vec<usize>,
    pub unpaired_distilled: Vec<usize>,
}

/// Greedy descending-overlap pairing of exact and distilled scar candidates.
pub fn scar_fidelity(exact: &[ExactScar], basis: &DickeBasis, spec: &Spectrum) -> Result<FidelityReport> {
    let distilled: Vec<usize> = (0..spec.len()).filter(|&k| spec.sym_population(k) >= 0.5).collect();
    if exact.is_empty() || distilled.is_empty() {
        return Err(IrdError::UndefinedMetric("no scar candidates on one side".into()));
    }
    let embedded: Vec<Vec<f64>> = distilled
        .iter()
        .map(|&k| {
            let v = spec.vector(k);
            let mut full = vec![0.0; 1 << basis.n()];
            for (f, &c) in v.iter().enumerate() {
                if c != 0.0 {
                    for (o, b) in full.iter_mut().zip(basis.vector(f)) {
                        *o += c * b;
                    }
                }
            }
            full
        })
        .collect();
    let mut cands = Vec::with_capacity(exact.len() * distilled.len());
    for (i, e) in exact.iter().enumerate() {
        for (j, d) in embedded.iter().enumerate() {
            let o: f64 = e.vector.iter().zip(d).map(|(a, b)| a * b).sum();
            cands.push((o * o, i, j));
        }
    }
    cands.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used_e = vec![false; exact.len()];
    let mut used_d = vec![false; distilled.len()];
    let mut pairs = Vec::new();
    for (f, i, j) in cands {
        if !used_e[i] && !used_d[j] {
            used_e[i] = true;
            used_d[j] = true;
            pairs.push((i, distilled[j], f));
        }
    }
    pairs.sort_by_key(|p| p.0);
    let mean = pairs.iter().map(|p| p.2).sum::<f64>() / pairs.len() as f64;
    Ok(FidelityReport {
        pairs,
        mean,
        unpaired_exact: (0..exact.len()).filter(|&i| !used_e[i]).collect(),
        unpaired_distilled: (0..distilled.len()).filter(|&j| !used_d[j]).map(|j| distilled[j]).collect(),
    })
}
