//! The structured density `g_ζ` of a restriction sequence, its spectrum
//! support law, and the boundedness certificates for the one-wise and
//! two-wise regimes.
//!
//! `g_ζ(x) = ∏_{players} ∏_{(e,lab) ∈ z} N^k·μ_e(x_{|e} - lab)` depends only on
//! the coordinates covered by the exposed edges, so certificates can run on
//! that window even when the full ground set is far beyond the transform cap.

use num_complex::Complex64;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::fourier::{certify_bounded, dft, BoundednessReport, DenseFunction, GrowthParams};
use crate::game::GameSpec;
use crate::matching::VertexId;
use crate::ratio::{rat_to_f64, rat_u128, Rat};
use crate::rectangle::structure::RestrictionSeq;

/// All exposed labeled edges of a sequence, tagged with their graph edge.
fn exposed_entries(spec: &GameSpec, zeta: &RestrictionSeq) -> Vec<(usize, Vec<VertexId>, Vec<u8>)> {
    let mut out = Vec::new();
    for (p, z) in zeta.per_player.iter().enumerate() {
        for (e, lab) in z.entries() {
            out.push((spec.player_edge(p), e.clone(), lab.clone()));
        }
    }
    out
}

/// Value of `g_ζ` at a point given by a window vector.
fn g_value(
    spec: &GameSpec,
    entries: &[(usize, Vec<VertexId>, Vec<u8>)],
    window: &[VertexId],
    x: &[u8],
) -> f64 {
    let n = spec.frame.graph.modulus;
    let scale = (n as f64).powi(spec.frame.graph.arity() as i32);
    let mut value = 1.0;
    for (edge_idx, e, lab) in entries {
        let mu = &spec.frame.graph.edge_dists[*edge_idx];
        let w: Vec<usize> = e
            .iter()
            .zip(lab)
            .map(|(v, &l)| {
                let pos = window.binary_search(v).expect("edge vertex inside window");
                (x[pos] as usize + n - l as usize) % n
            })
            .collect();
        value *= scale * rat_to_f64(mu.mass_of_tuple(&w));
        if value == 0.0 {
            break;
        }
    }
    value
}

/// Exact rational value of `g_ζ` at a full ground-set point.
pub fn g_value_exact(spec: &GameSpec, zeta: &RestrictionSeq, x_ground: &[u8]) -> Rat {
    let n = spec.frame.graph.modulus;
    let scale = rat_u128((n as u128).pow(spec.frame.graph.arity() as u32));
    let mut value = Rat::from_integer(1.into());
    for (p, z) in zeta.per_player.iter().enumerate() {
        let mu = spec.mu_of_player(p);
        for (e, lab) in z.entries() {
            let w: Vec<usize> = e
                .iter()
                .zip(lab)
                .map(|(&v, &l)| (x_ground[v as usize] as usize + n - l as usize) % n)
                .collect();
            value *= &scale * mu.mass_of_tuple(&w);
        }
    }
    value
}

/// `g_ζ` on the full ground set `Z_N^{V×[n]}` (cap-guarded).
pub fn structured_density(spec: &GameSpec, zeta: &RestrictionSeq, caps: &Caps) -> Result<DenseFunction> {
    let sites: Vec<VertexId> = (0..spec.frame.ground_size() as VertexId).collect();
    structured_density_on(spec, zeta, sites, caps)
}

/// `g_ζ` on the window of vertices its exposed edges touch; constant
/// directions are dropped. Fourier data on the window agrees with the full
/// function: coefficients supported inside the window match, all others are 0.
pub fn structured_density_window(spec: &GameSpec, zeta: &RestrictionSeq, caps: &Caps) -> Result<DenseFunction> {
    let mut sites: Vec<VertexId> = zeta.union_edges().into_iter().flatten().collect();
    sites.sort_unstable();
    sites.dedup();
    structured_density_on(spec, zeta, sites, caps)
}

fn structured_density_on(
    spec: &GameSpec,
    zeta: &RestrictionSeq,
    sites: Vec<VertexId>,
    caps: &Caps,
) -> Result<DenseFunction> {
    zeta.validate(spec)?;
    let n = spec.frame.graph.modulus;
    let size = DenseFunction::check_cap(n, sites.len(), caps)?;
    let entries = exposed_entries(spec, zeta);
    let mut values = Vec::with_capacity(size as usize);
    let mut x = vec![0u8; sites.len()];
    loop {
        values.push(Complex64::new(g_value(spec, &entries, &sites, &x), 0.0));
        if !crate::game::kernels::advance_point(&mut x, n) {
            break;
        }
    }
    DenseFunction::new(n, sites, values)
}

/// Report of the spectrum support law for an acyclic sequence: `ĝ_ζ(b) = 0`
/// whenever `supp(b)` leaves the component union or meets some component in
/// exactly one vertex, and `E[g_ζ] = 1`.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub max_forbidden_magnitude: f64,
    pub mean_error: f64,
    pub forbidden_checked: usize,
    pub allowed_nonzero: usize,
}

impl SpectrumReport {
    pub fn pass(&self) -> bool {
        self.max_forbidden_magnitude <= 1e-10 && self.mean_error <= 1e-12
    }
}

/// Checks the vanishing pattern on the full ground grid (cap-guarded).
pub fn verify_spectrum_vanishing(spec: &GameSpec, zeta: &RestrictionSeq, caps: &Caps) -> Result<SpectrumReport> {
    if zeta.is_cyclic(spec.frame.graph.arity()) {
        return Err(Error::domain("spectrum support law requires an acyclic sequence"));
    }
    let g = structured_density(spec, zeta, caps)?;
    let spectrum = dft(&g);
    let components = zeta.components();
    let in_component = |v: VertexId| components.iter().position(|c| c.binary_search(&v).is_ok());

    let mut max_forbidden = 0.0f64;
    let mut forbidden_checked = 0usize;
    let mut allowed_nonzero = 0usize;
    for b in 0..spectrum.len() {
        let digits = spectrum.decode_index(b);
        let support: Vec<VertexId> = digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, _)| spectrum.sites[i])
            .collect();
        let mut counts = vec![0usize; components.len()];
        let mut outside = false;
        for &v in &support {
            match in_component(v) {
                Some(c) => counts[c] += 1,
                None => outside = true,
            }
        }
        let forbidden = outside || counts.contains(&1);
        let mag = spectrum.values[b].norm();
        if forbidden {
            forbidden_checked += 1;
            max_forbidden = max_forbidden.max(mag);
        } else if mag > 1e-10 {
            allowed_nonzero += 1;
        }
    }
    let mean_error = (spectrum.values[0] - Complex64::new(1.0, 0.0)).norm();
    Ok(SpectrumReport {
        max_forbidden_magnitude: max_forbidden,
        mean_error,
        forbidden_checked,
        allowed_nonzero,
    })
}

/// Which structured-density boundedness certificate to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityRegime {
    /// Acyclic sequence over one-wise distributions:
    /// `(n, 20N², γ·n·log2 N, 0)`.
    OneWise,
    /// Almost-acyclic sequence over two-wise distributions:
    /// `(n, (15kN^k·K|E|)^4, γ·k·n·log2 N, 0)`.
    TwoWise,
}

#[derive(Debug)]
pub struct StructuredBoundedReport {
    pub regime: DensityRegime,
    pub params: GrowthParams,
    pub report: BoundednessReport,
}

impl StructuredBoundedReport {
    pub fn pass(&self) -> bool {
        self.report.pass()
    }
}

/// Certifies `g_ζ` against the regime's parameters, computing the transform on
/// the exposed-edge window.
pub fn verify_structured_bounded(
    spec: &GameSpec,
    zeta: &RestrictionSeq,
    gamma: f64,
    regime: DensityRegime,
    caps: &Caps,
) -> Result<StructuredBoundedReport> {
    let k = spec.frame.graph.arity();
    let n = spec.frame.n as f64;
    let modulus = spec.frame.graph.modulus as f64;
    match regime {
        DensityRegime::OneWise => {
            if zeta.is_cyclic(k) {
                return Err(Error::domain("one-wise certificate requires an acyclic sequence"));
            }
            if zeta.weight() as f64 > gamma * n {
                return Err(Error::domain(format!(
                    "sequence weight {} exceeds γ·n = {}",
                    zeta.weight(),
                    gamma * n
                )));
            }
        }
        DensityRegime::TwoWise => {
            if !spec.frame.graph.is_twowise() {
                return Err(Error::domain("two-wise certificate requires two-wise edge distributions"));
            }
            let edges = zeta.union_edges().len() as f64;
            if !zeta.is_almost_acyclic(k, zeta.union_edges().len()) {
                return Err(Error::domain("two-wise certificate requires an almost-acyclic sequence"));
            }
            if edges > gamma * n {
                return Err(Error::domain("edge count exceeds γ·n"));
            }
        }
    }

    let params = match regime {
        DensityRegime::OneWise => GrowthParams::new(
            n,
            20.0 * modulus * modulus,
            (gamma * n * modulus.log2()).max(1.0),
            0.0,
        )?,
        DensityRegime::TwoWise => {
            let players = spec.num_players() as f64;
            let c = (15.0 * k as f64 * modulus.powi(k as i32) * players).powi(4);
            GrowthParams::new(n, c, (gamma * k as f64 * n * modulus.log2()).max(1.0), 0.0)?
        }
    };
    let g = structured_density_window(spec, zeta, caps)?;
    let report = certify_bounded(&g, &params)?;
    Ok(StructuredBoundedReport { regime, params, report })
}
