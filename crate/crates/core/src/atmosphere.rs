//! International Standard Atmosphere, airspeed conversions and the energy
//! share factor feeding the total-energy climb equation.
//!
//! Temperature deviations from ISA (`delta_t`) shift temperature, density
//! and the speed of sound only; the pressure profile stays on the standard
//! hydrostatic closed forms. Geometric and geopotential altitude are
//! treated as identical below 25 km (error < 0.4%).

use crate::error::{Error, Result};

/// Ratio of specific heats for air.
pub const KAPPA: f64 = 1.4;
/// Specific gas constant for dry air, J/(kg K).
pub const R_AIR: f64 = 287.052_87;
/// Standard gravitational acceleration, m/s^2.
pub const G0: f64 = 9.806_65;
/// Sea-level ISA temperature, K.
pub const T0: f64 = 288.15;
/// Sea-level ISA pressure, Pa.
pub const P0: f64 = 101_325.0;
/// Tropospheric lapse rate, K/m (temperature falls with altitude).
pub const LAPSE: f64 = 0.006_5;
/// Geopotential altitude of the tropopause, m.
pub const TROPOPAUSE_M: f64 = 11_000.0;
/// ISA temperature at the tropopause, K.
pub const T_TROPOPAUSE: f64 = 216.65;

/// Feet per metre; fixed so unit conversions are exact and reproducible.
pub const FT_PER_M: f64 = 3.280_84;
/// Converts a vertical speed in m/s to ft/min.
pub const MS_TO_FT_MIN: f64 = FT_PER_M * 60.0;

const H_MIN: f64 = -1_000.0;
const H_MAX: f64 = 25_000.0;

/// Flight level (hundreds of feet) to metres.
pub fn fl_to_m(fl: f64) -> f64 {
    fl * 100.0 / FT_PER_M
}

/// Metres to flight level (hundreds of feet).
pub fn m_to_fl(h: f64) -> f64 {
    h * FT_PER_M / 100.0
}

/// Atmospheric state at one altitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtmosphereState {
    pub altitude_geopotential: f64,
    pub temperature: f64,
    pub pressure: f64,
    pub density: f64,
    pub speed_of_sound: f64,
}

/// Climb-law speed regime: which quantity the aircraft holds constant and
/// which side of the tropopause it is on. Determines the energy share
/// factor form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpeedRegime {
    ConstantCasBelowTropopause,
    ConstantCasAboveTropopause,
    ConstantMachBelowTropopause,
    ConstantMachAboveTropopause,
}

impl SpeedRegime {
    /// Regime for an aircraft at Mach `m` and altitude `h` flying the
    /// standard climb law (constant CAS until `transition_mach`, then
    /// constant Mach).
    pub fn select(m: f64, transition_mach: f64, h: f64) -> SpeedRegime {
        let above = h >= TROPOPAUSE_M;
        let constant_mach = m >= transition_mach;
        match (constant_mach, above) {
            (false, false) => SpeedRegime::ConstantCasBelowTropopause,
            (false, true) => SpeedRegime::ConstantCasAboveTropopause,
            (true, false) => SpeedRegime::ConstantMachBelowTropopause,
            (true, true) => SpeedRegime::ConstantMachAboveTropopause,
        }
    }
}

/// ISA state at geopotential altitude `h` with temperature offset
/// `delta_t` from standard.
///
/// Below the tropopause the temperature falls linearly at 6.5 K/km from
/// 288.15 K; above it is isothermal at 216.65 K. `delta_t` shifts
/// temperature only; the pressure profile is the standard one.
pub fn isa_state(h: f64, delta_t: f64) -> Result<AtmosphereState> {
    if !(H_MIN..=H_MAX).contains(&h) {
        return Err(Error::OutOfRange {
            quantity: "altitude",
            value: h,
            min: H_MIN,
            max: H_MAX,
        });
    }
    let (t_std, pressure) = if h <= TROPOPAUSE_M {
        let t = T0 - LAPSE * h;
        let p = P0 * (t / T0).powf(G0 / (LAPSE * R_AIR));
        (t, p)
    } else {
        let p_trop = P0 * (T_TROPOPAUSE / T0).powf(G0 / (LAPSE * R_AIR));
        let p = p_trop * (-G0 * (h - TROPOPAUSE_M) / (R_AIR * T_TROPOPAUSE)).exp();
        (T_TROPOPAUSE, p)
    };
    let temperature = t_std + delta_t;
    if temperature <= 0.0 {
        return Err(Error::OutOfRange {
            quantity: "temperature",
            value: temperature,
            min: f64::MIN_POSITIVE,
            max: f64::INFINITY,
        });
    }
    Ok(AtmosphereState {
        altitude_geopotential: h,
        temperature,
        pressure,
        density: pressure / (R_AIR * temperature),
        speed_of_sound: (KAPPA * R_AIR * temperature).sqrt(),
    })
}

/// Sea-level ISA speed of sound, the reference for calibrated airspeed.
fn a0() -> f64 {
    (KAPPA * R_AIR * T0).sqrt()
}

/// Impact pressure produced by speed `v` in an atmosphere with static
/// pressure `p` and speed of sound `a` (compressible Bernoulli).
fn impact_pressure(v: f64, p: f64, a: f64) -> f64 {
    let m2 = (v / a) * (v / a);
    p * ((1.0 + 0.5 * (KAPPA - 1.0) * m2).powf(KAPPA / (KAPPA - 1.0)) - 1.0)
}

/// Speed recovered from impact pressure `qc` at static pressure `p` and
/// speed of sound `a`. Exact inverse of [`impact_pressure`].
fn speed_from_impact_pressure(qc: f64, p: f64, a: f64) -> f64 {
    let m2 = 2.0 / (KAPPA - 1.0) * ((1.0 + qc / p).powf((KAPPA - 1.0) / KAPPA) - 1.0);
    a * m2.sqrt()
}

fn check_speed(v: f64) -> Result<()> {
    if v <= 0.0 || !v.is_finite() {
        return Err(Error::OutOfRange {
            quantity: "speed",
            value: v,
            min: f64::MIN_POSITIVE,
            max: f64::INFINITY,
        });
    }
    Ok(())
}

fn check_subsonic(v: f64, a: f64) -> Result<()> {
    if v >= a {
        return Err(Error::OutOfRange {
            quantity: "mach",
            value: v / a,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

/// Calibrated to true airspeed at altitude `h` with ISA offset `delta_t`.
///
/// Compressible-flow conversion through the impact pressure; the exact
/// inverse of [`tas_to_cas`]. Errors if either end of the conversion
/// reaches the sonic limit of the subsonic formula.
pub fn cas_to_tas(v_cas: f64, h: f64, delta_t: f64) -> Result<f64> {
    check_speed(v_cas)?;
    check_subsonic(v_cas, a0())?;
    let st = isa_state(h, delta_t)?;
    let qc = impact_pressure(v_cas, P0, a0());
    let v_tas = speed_from_impact_pressure(qc, st.pressure, st.speed_of_sound);
    check_subsonic(v_tas, st.speed_of_sound)?;
    Ok(v_tas)
}

/// True to calibrated airspeed at altitude `h` with ISA offset `delta_t`.
pub fn tas_to_cas(v_tas: f64, h: f64, delta_t: f64) -> Result<f64> {
    check_speed(v_tas)?;
    let st = isa_state(h, delta_t)?;
    check_subsonic(v_tas, st.speed_of_sound)?;
    let qc = impact_pressure(v_tas, st.pressure, st.speed_of_sound);
    Ok(speed_from_impact_pressure(qc, P0, a0()))
}

/// Mach number of true airspeed `v_tas` at altitude `h`.
pub fn mach(v_tas: f64, h: f64, delta_t: f64) -> Result<f64> {
    if v_tas < 0.0 || !v_tas.is_finite() {
        return Err(Error::OutOfRange {
            quantity: "speed",
            value: v_tas,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    Ok(v_tas / isa_state(h, delta_t)?.speed_of_sound)
}

/// Compressibility bracket shared by the constant-CAS energy share forms.
fn cas_compressibility(m: f64) -> f64 {
    let b = 1.0 + 0.5 * (KAPPA - 1.0) * m * m;
    b.powf(-1.0 / (KAPPA - 1.0)) * (b.powf(KAPPA / (KAPPA - 1.0)) - 1.0)
}

/// Energy share factor f(M): the fraction of excess power allocated to
/// climbing rather than accelerating, for the given speed regime. The
/// temperature correction prefactor is fixed at one.
pub fn energy_share_factor(m: f64, regime: SpeedRegime) -> Result<f64> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::OutOfRange {
            quantity: "mach",
            value: m,
            min: 0.0,
            max: 1.0,
        });
    }
    // dT/dh below the tropopause; the sign matters.
    let beta = -LAPSE;
    let lapse_term = KAPPA * R_AIR * beta / (2.0 * G0) * m * m;
    let f = match regime {
        SpeedRegime::ConstantMachAboveTropopause => 1.0,
        SpeedRegime::ConstantMachBelowTropopause => 1.0 / (1.0 + lapse_term),
        SpeedRegime::ConstantCasBelowTropopause => {
            1.0 / (1.0 + lapse_term + cas_compressibility(m))
        }
        SpeedRegime::ConstantCasAboveTropopause => 1.0 / (1.0 + cas_compressibility(m)),
    };
    debug_assert!(f > 0.0);
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn sea_level_defining_constants() {
        let st = isa_state(0.0, 0.0).unwrap();
        assert_eq!(st.temperature, 288.15);
        assert_eq!(st.pressure, 101_325.0);
        assert_relative_eq!(st.density, 1.225, max_relative = 1e-3);
    }

    #[test]
    fn tropopause_temperature() {
        let st = isa_state(11_000.0, 0.0).unwrap();
        assert_abs_diff_eq!(st.temperature, 216.65, epsilon = 1e-9);
    }

    /// Hydrostatic oracle: integrate dp/dh = -g0 p / (R T(h)) with RK4 and
    /// compare against the closed forms at 15 km.
    #[test]
    fn pressure_matches_hydrostatic_integration() {
        let t_of_h = |h: f64| {
            if h <= TROPOPAUSE_M {
                T0 - LAPSE * h
            } else {
                T_TROPOPAUSE
            }
        };
        let f = |h: f64, p: f64| -G0 * p / (R_AIR * t_of_h(h));
        let mut p = P0;
        let mut h = 0.0;
        let dh = 1.0;
        while h < 15_000.0 - 1e-9 {
            let k1 = f(h, p);
            let k2 = f(h + dh / 2.0, p + dh / 2.0 * k1);
            let k3 = f(h + dh / 2.0, p + dh / 2.0 * k2);
            let k4 = f(h + dh, p + dh * k3);
            p += dh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            h += dh;
        }
        let st = isa_state(15_000.0, 0.0).unwrap();
        assert_relative_eq!(st.pressure, p, max_relative = 1e-3);
    }

    #[test]
    fn continuity_across_tropopause() {
        let below = isa_state(TROPOPAUSE_M - 1e-6, 0.0).unwrap();
        let above = isa_state(TROPOPAUSE_M + 1e-6, 0.0).unwrap();
        assert_relative_eq!(below.temperature, above.temperature, max_relative = 1e-9);
        assert_relative_eq!(below.pressure, above.pressure, max_relative = 1e-9);
        // C1 continuity: hydrostatic slope dp/dh = -g0 p/(RT) agrees on both
        // sides because p and T agree; check the numerical slope too.
        let d = 0.5;
        let slope_below = (isa_state(TROPOPAUSE_M, 0.0).unwrap().pressure
            - isa_state(TROPOPAUSE_M - d, 0.0).unwrap().pressure)
            / d;
        let slope_above = (isa_state(TROPOPAUSE_M + d, 0.0).unwrap().pressure
            - isa_state(TROPOPAUSE_M, 0.0).unwrap().pressure)
            / d;
        assert_relative_eq!(slope_below, slope_above, max_relative = 1e-3);
    }

    #[test]
    fn delta_t_shifts_temperature_not_pressure() {
        let std = isa_state(8_000.0, 0.0).unwrap();
        let hot = isa_state(8_000.0, 10.0).unwrap();
        assert_abs_diff_eq!(hot.temperature - std.temperature, 10.0, epsilon = 1e-12);
        assert_eq!(hot.pressure, std.pressure);
        assert!(hot.density < std.density);
    }

    #[test]
    fn altitude_out_of_range_rejected() {
        assert!(isa_state(-2_000.0, 0.0).is_err());
        assert!(isa_state(30_000.0, 0.0).is_err());
    }

    #[test]
    fn cas_tas_identity_at_sea_level() {
        let v = cas_to_tas(140.0, 0.0, 0.0).unwrap();
        assert_relative_eq!(v, 140.0, max_relative = 1e-12);
    }

    #[test]
    fn cas_tas_round_trip() {
        for &(v, h, dt) in &[
            (80.0, 1_000.0, 0.0),
            (140.0, 9_144.0, 0.0),
            (160.0, 5_000.0, -12.0),
            (120.0, 12_500.0, 8.0),
        ] {
            let tas = cas_to_tas(v, h, dt).unwrap();
            let back = tas_to_cas(tas, h, dt).unwrap();
            assert_relative_eq!(back, v, max_relative = 1e-9);
        }
    }

    /// Bisection on the forward formula as an independent inverse oracle.
    #[test]
    fn cas_to_tas_matches_bisection_oracle() {
        let (cas, h) = (140.0, 9_144.0);
        let tas = cas_to_tas(cas, h, 0.0).unwrap();
        let (mut lo, mut hi) = (cas, 400.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if tas_to_cas(mid, h, 0.0).unwrap() < cas {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert_relative_eq!(tas, 0.5 * (lo + hi), max_relative = 1e-9);
        assert!(tas > cas); // thinner air: TAS exceeds CAS aloft
    }

    #[test]
    fn conversion_monotone_in_speed() {
        let mut prev = 0.0;
        for i in 1..40 {
            let v = 60.0 + 4.0 * i as f64;
            let tas = cas_to_tas(v, 7_000.0, 0.0).unwrap();
            assert!(tas > prev);
            prev = tas;
        }
    }

    #[test]
    fn tas_at_constant_cas_nondecreasing_in_altitude() {
        let mut prev = 0.0;
        for i in 0..=150 {
            let h = 100.0 * i as f64;
            let tas = cas_to_tas(130.0, h, 0.0).unwrap();
            assert!(tas >= prev, "TAS fell at h = {h}");
            prev = tas;
        }
    }

    #[test]
    fn sonic_limit_rejected() {
        assert!(cas_to_tas(400.0, 0.0, 0.0).is_err());
        assert!(tas_to_cas(310.0, 11_000.0, 0.0).is_err());
        // high CAS that would go supersonic aloft
        assert!(cas_to_tas(290.0, 12_000.0, 0.0).is_err());
    }

    #[test]
    fn mach_basics() {
        assert_eq!(mach(0.0, 5_000.0, 0.0).unwrap(), 0.0);
        let a = isa_state(5_000.0, 0.0).unwrap().speed_of_sound;
        assert_relative_eq!(mach(a, 5_000.0, 0.0).unwrap(), 1.0, max_relative = 1e-12);
        let a10 = isa_state(10_000.0, 0.0).unwrap().speed_of_sound;
        assert_relative_eq!(mach(230.0, 10_000.0, 0.0).unwrap(), 230.0 / a10);
    }

    #[test]
    fn esf_constant_mach_above_tropopause_is_one() {
        for &m in &[0.1, 0.5, 0.82, 0.95] {
            assert_eq!(
                energy_share_factor(m, SpeedRegime::ConstantMachAboveTropopause).unwrap(),
                1.0
            );
        }
    }

    #[test]
    fn esf_low_mach_limit_is_one() {
        let f = energy_share_factor(1e-6, SpeedRegime::ConstantCasBelowTropopause).unwrap();
        assert_abs_diff_eq!(f, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn esf_rejects_supersonic() {
        assert!(energy_share_factor(1.0, SpeedRegime::ConstantCasBelowTropopause).is_err());
    }

    /// Finite-difference oracle: at constant CAS, f = (1 + (V/g) dV/dh)^-1.
    fn esf_fd(m: f64, h: f64) -> f64 {
        let a = isa_state(h, 0.0).unwrap().speed_of_sound;
        let v = m * a;
        let cas = tas_to_cas(v, h, 0.0).unwrap();
        let d = 1.0;
        let vp = cas_to_tas(cas, h + d, 0.0).unwrap();
        let vm = cas_to_tas(cas, h - d, 0.0).unwrap();
        let dvdh = (vp - vm) / (2.0 * d);
        1.0 / (1.0 + v / G0 * dvdh)
    }

    #[test]
    fn esf_matches_finite_difference_oracle() {
        for &m in &[0.3, 0.5, 0.7] {
            let below = energy_share_factor(m, SpeedRegime::ConstantCasBelowTropopause).unwrap();
            assert_abs_diff_eq!(below, esf_fd(m, 5_000.0), epsilon = 1e-3);
            let above = energy_share_factor(m, SpeedRegime::ConstantCasAboveTropopause).unwrap();
            assert_abs_diff_eq!(above, esf_fd(m, 12_500.0), epsilon = 1e-3);
        }
    }

    #[test]
    fn regime_selection() {
        assert_eq!(
            SpeedRegime::select(0.5, 0.78, 6_000.0),
            SpeedRegime::ConstantCasBelowTropopause
        );
        assert_eq!(
            SpeedRegime::select(0.80, 0.78, 6_000.0),
            SpeedRegime::ConstantMachBelowTropopause
        );
        assert_eq!(
            SpeedRegime::select(0.70, 0.78, 12_000.0),
            SpeedRegime::ConstantCasAboveTropopause
        );
        assert_eq!(
            SpeedRegime::select(0.80, 0.78, 12_000.0),
            SpeedRegime::ConstantMachAboveTropopause
        );
    }
}
