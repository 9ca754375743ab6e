use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex;
use rayon::prelude::*;

use super::packet::{build_packet, in_admissible_region};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::{lp_project, ComplexField, DyadicBand, Field};

/// `γ^λ(t, v) = ⟨P_λ φ, u^v⟩` for each requested velocity at one time.
#[derive(Clone, Debug)]
pub struct ProfileRow {
    pub t: f64,
    pub gamma: Vec<Complex<f64>>,
    /// False where `(t, v)` lies outside the admissible region.
    pub admissible: Vec<bool>,
}

pub fn gamma_profile<T: Real>(phi: &Field<T>, t: f64, band: DyadicBand, velocities: &[f64]) -> Result<ProfileRow> {
    let projected = ComplexField::from_real(&lp_project(phi, band).field);
    let gamma = velocities
        .par_iter()
        .map(|&v| {
            let packet = build_packet(v, t, phi.grid())?;
            let z = projected.inner(&packet.field)?;
            Ok(Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy()))
        })
        .collect::<Result<Vec<_>>>()?;
    let admissible = velocities.iter().map(|&v| in_admissible_region(band, t, v)).collect();
    Ok(ProfileRow { t, gamma, admissible })
}

/// `γ[t, v]` over a list of times in one band.
#[derive(Clone, Debug)]
pub struct ProfileRecord {
    pub band: DyadicBand,
    pub velocities: Vec<f64>,
    pub rows: Vec<ProfileRow>,
}

impl ProfileRecord {
    pub fn new(band: DyadicBand, velocities: Vec<f64>) -> Self {
        Self { band, velocities, rows: Vec::new() }
    }

    /// Extracts a row from `phi` at time `t` and appends it.
    pub fn push_state<T: Real>(&mut self, phi: &Field<T>, t: f64) -> Result<()> {
        if let Some(last) = self.rows.last() {
            if !(t > last.t) {
                return Err(Error::invalid(format!("profile times must increase ({} then {t})", last.t)));
            }
        }
        let row = gamma_profile(phi, t, self.band, &self.velocities)?;
        self.rows.push(row);
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.t).collect()
    }

    /// Time series of `γ` at velocity index `j`.
    pub fn series(&self, j: usize) -> Vec<Complex<f64>> {
        self.rows.iter().map(|r| r.gamma[j]).collect()
    }

    /// `γ · conj(γ_ref)/|γ_ref|`: keeps the modulus of `γ` and measures its
    /// phase against a reference record (typically the linear flow of the
    /// same datum) sampled at the same times and velocities.
    pub fn relative_to(&self, reference: &ProfileRecord) -> Result<ProfileRecord> {
        if self.velocities != reference.velocities || self.times() != reference.times() {
            return Err(Error::invalid("reference profile is sampled differently"));
        }
        let rows = self
            .rows
            .iter()
            .zip(&reference.rows)
            .map(|(a, b)| ProfileRow {
                t: a.t,
                gamma: a
                    .gamma
                    .iter()
                    .zip(&b.gamma)
                    .map(|(g, r)| if r.norm() > 0.0 { g * r.conj() / r.norm() } else { *g })
                    .collect(),
                admissible: a.admissible.clone(),
            })
            .collect();
        Ok(ProfileRecord { band: self.band, velocities: self.velocities.clone(), rows })
    }

    /// CSV with header `t,v,re,im,abs`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(fs::File::create(path)?);
        writeln!(w, "t,v,re,im,abs")?;
        for r in &self.rows {
            for (v, g) in self.velocities.iter().zip(&r.gamma) {
                writeln!(w, "{:e},{:e},{:e},{:e},{:e}", r.t, v, g.re, g.im, g.norm())?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::packet::band_velocities;
    use crate::spectral::GridSpec;
    use std::f64::consts::PI;

    #[test]
    fn zero_field_gives_zero_profile() {
        let g = GridSpec::new(32.0 * PI, 1024).unwrap();
        let vs = band_velocities(DyadicBand(0), 4);
        let row = gamma_profile(&Field::zeros(&g), 8.0, DyadicBand(0), &vs).unwrap();
        assert!(row.gamma.iter().all(|z| z.norm() == 0.0));
        assert!(row.admissible.iter().all(|&a| a));
    }

    #[test]
    fn matched_filter_peaks_at_the_packet_velocity() {
        let g = GridSpec::new(32.0 * PI, 2048).unwrap();
        let band = DyadicBand(0);
        let vs = band_velocities(band, 8);
        let target = 3;
        let packet = build_packet(vs[target], 10.0, &g).unwrap();
        let phi = packet.field.real_part().scale(0.7);
        let row = gamma_profile(&phi, 10.0, band, &vs).unwrap();
        let best = (0..vs.len()).max_by(|&a, &b| row.gamma[a].norm().total_cmp(&row.gamma[b].norm())).unwrap();
        assert_eq!(best, target);
    }
}
