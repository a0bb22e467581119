//! Point-mass total-energy performance model: thrust and drag laws, the
//! climb-rate equation and forward integration of a climb given thrust and
//! CAS as functions of altitude.
//!
//! Aircraft coefficients are documented parametric surrogates, not
//! licensed performance-table values; licensees can swap their own
//! numbers in through the performance parameter file.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::atmosphere::{
    self, cas_to_tas, energy_share_factor, isa_state, SpeedRegime, G0, MS_TO_FT_MIN,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineType {
    Jet,
    Turboprop,
}

/// Performance parameters for one aircraft type.
///
/// Thrust coefficients follow the jet convention `T = c1 (1 - h/c2 + c3 h^2)`
/// with `c1` in N, `c2` in m and `c3` in 1/m^2. The turboprop surrogate
/// `T = c1 / V_TAS (1 - h/c2) + c3` reuses the same fields with `c1` acting
/// as a power coefficient (W) and `c3` as a residual thrust (N).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AircraftPerf {
    pub type_code: String,
    pub mass: f64,
    pub wing_area: f64,
    pub cd0: f64,
    pub induced_k: f64,
    pub thrust_c1: f64,
    pub thrust_c2: f64,
    pub thrust_c3: f64,
    pub engine: EngineType,
    pub cas_mach_transition: f64,
    pub service_ceiling: f64,
}

/// One point of an integrated climb.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    /// Elapsed time since the start of the climb, s.
    pub t: f64,
    /// Geopotential altitude, m.
    pub h: f64,
    /// Rate of climb, ft/min.
    pub rocd: f64,
    /// Calibrated airspeed, m/s.
    pub v_cas: f64,
    /// True airspeed, m/s.
    pub v_tas: f64,
    pub mach: f64,
}

/// Maximum climb thrust at altitude `h` and true airspeed `v_tas`.
///
/// Jets ignore `v_tas`; the turboprop surrogate is power-limited and needs
/// it.
pub fn max_climb_thrust(h: f64, v_tas: f64, perf: &AircraftPerf) -> Result<f64> {
    if h < 0.0 || h > perf.service_ceiling {
        return Err(Error::OutOfRange {
            quantity: "altitude",
            value: h,
            min: 0.0,
            max: perf.service_ceiling,
        });
    }
    let t = match perf.engine {
        EngineType::Jet => {
            perf.thrust_c1 * (1.0 - h / perf.thrust_c2 + perf.thrust_c3 * h * h)
        }
        EngineType::Turboprop => {
            if v_tas <= 0.0 {
                return Err(Error::OutOfRange {
                    quantity: "speed",
                    value: v_tas,
                    min: f64::MIN_POSITIVE,
                    max: f64::INFINITY,
                });
            }
            perf.thrust_c1 / v_tas * (1.0 - h / perf.thrust_c2) + perf.thrust_c3
        }
    };
    Ok(t)
}

/// Aerodynamic drag from the parabolic polar with the level-lift
/// approximation (climb-angle cosine taken as one).
pub fn drag(h: f64, v_tas: f64, perf: &AircraftPerf, delta_t: f64) -> Result<f64> {
    if v_tas <= 0.0 {
        return Err(Error::OutOfRange {
            quantity: "speed",
            value: v_tas,
            min: f64::MIN_POSITIVE,
            max: f64::INFINITY,
        });
    }
    let rho = isa_state(h, delta_t)?.density;
    let q = 0.5 * rho * v_tas * v_tas;
    let qs = q * perf.wing_area;
    let cl = perf.mass * G0 / qs;
    Ok(qs * (perf.cd0 + perf.induced_k * cl * cl))
}

/// Rate of climb from the total-energy balance, ft/min.
///
/// `(T - D) V / (m g0) * f(M)` with the temperature correction prefactor
/// fixed at one; the unit conversion to ft/min is exact (1 m = 3.28084 ft).
pub fn rocd(
    h: f64,
    t_hr: f64,
    v_tas: f64,
    perf: &AircraftPerf,
    regime: SpeedRegime,
    delta_t: f64,
) -> Result<f64> {
    let d = drag(h, v_tas, perf, delta_t)?;
    let m = atmosphere::mach(v_tas, h, delta_t)?;
    let f = energy_share_factor(m, regime)?;
    Ok((t_hr - d) * v_tas / (perf.mass * G0) * f * MS_TO_FT_MIN)
}

/// Default integration step: the 100 ft grid spacing of the reduced-order
/// altitude grid, in metres.
pub const DEFAULT_STEP_M: f64 = 100.0 / atmosphere::FT_PER_M;

/// Integrate a climb from `h0` to `h1` given thrust and CAS as functions
/// of altitude.
///
/// Altitude-stepped midpoint rule: each 100 ft (by default) interval is
/// crossed in `dh / rocd(midpoint)`. The speed regime switches at the
/// aircraft's CAS-Mach transition and at the tropopause. Fails with
/// [`Error::IntegrationStall`] if the climb rate drops to zero or below
/// anywhere on the span.
pub fn integrate_climb<T, C>(
    perf: &AircraftPerf,
    thrust_fn: T,
    cas_fn: C,
    h0: f64,
    h1: f64,
    delta_t: f64,
    step: f64,
) -> Result<Vec<TrajectoryPoint>>
where
    T: Fn(f64) -> f64,
    C: Fn(f64) -> f64,
{
    if !(h0 <= h1 && h1 <= perf.service_ceiling) {
        return Err(Error::OutOfRange {
            quantity: "climb span",
            value: h1,
            min: h0,
            max: perf.service_ceiling,
        });
    }
    if step <= 0.0 {
        return Err(Error::InvalidConfig(format!("step {step} must be > 0")));
    }

    let point_at = |t: f64, h: f64| -> Result<TrajectoryPoint> {
        let v_cas = cas_fn(h);
        let v_tas = cas_to_tas(v_cas, h, delta_t)?;
        let m = atmosphere::mach(v_tas, h, delta_t)?;
        let regime = SpeedRegime::select(m, perf.cas_mach_transition, h);
        let r = rocd(h, thrust_fn(h), v_tas, perf, regime, delta_t)?;
        Ok(TrajectoryPoint {
            t,
            h,
            rocd: r,
            v_cas,
            v_tas,
            mach: m,
        })
    };

    let mut points = vec![point_at(0.0, h0)?];
    let mut h = h0;
    let mut t = 0.0;
    while h < h1 {
        let h_next = (h + step).min(h1);
        let hm = 0.5 * (h + h_next);
        let v_cas = cas_fn(hm);
        let v_tas = cas_to_tas(v_cas, hm, delta_t)?;
        let m = atmosphere::mach(v_tas, hm, delta_t)?;
        let regime = SpeedRegime::select(m, perf.cas_mach_transition, hm);
        let r = rocd(hm, thrust_fn(hm), v_tas, perf, regime, delta_t)?;
        if r <= 0.0 {
            return Err(Error::IntegrationStall { altitude: hm });
        }
        t += (h_next - h) / (r / MS_TO_FT_MIN);
        h = h_next;
        points.push(point_at(t, h)?);
    }
    Ok(points)
}

// ---------------------------------------------------------------------
// Built-in surrogate fleet
// ---------------------------------------------------------------------

/// B738-like medium twin jet surrogate.
pub fn surrogate_b738() -> AircraftPerf {
    AircraftPerf {
        type_code: "B738".to_string(),
        mass: 62_000.0,
        wing_area: 124.6,
        cd0: 0.024,
        induced_k: 0.036,
        thrust_c1: 150_000.0,
        thrust_c2: 16_000.0,
        thrust_c3: 2.0e-10,
        engine: EngineType::Jet,
        cas_mach_transition: 0.78,
        service_ceiling: 12_500.0,
    }
}

/// A320-like medium twin jet surrogate.
pub fn surrogate_a320() -> AircraftPerf {
    AircraftPerf {
        type_code: "A320".to_string(),
        mass: 60_000.0,
        wing_area: 122.4,
        cd0: 0.0235,
        induced_k: 0.0375,
        thrust_c1: 140_000.0,
        thrust_c2: 15_500.0,
        thrust_c3: 2.5e-10,
        engine: EngineType::Jet,
        cas_mach_transition: 0.78,
        service_ceiling: 12_200.0,
    }
}

/// DH8D-like regional turboprop surrogate.
pub fn surrogate_dh8d() -> AircraftPerf {
    AircraftPerf {
        type_code: "DH8D".to_string(),
        mass: 27_000.0,
        wing_area: 63.1,
        cd0: 0.028,
        induced_k: 0.045,
        thrust_c1: 8.0e6,
        thrust_c2: 12_000.0,
        thrust_c3: 6_000.0,
        engine: EngineType::Turboprop,
        cas_mach_transition: 0.62,
        service_ceiling: 8_230.0,
    }
}

/// The surrogate parameter sets shipped with the repository.
pub fn builtin_fleet() -> Vec<AircraftPerf> {
    vec![surrogate_b738(), surrogate_a320(), surrogate_dh8d()]
}

// ---------------------------------------------------------------------
// Performance parameter file
// ---------------------------------------------------------------------

const PERF_HEADER: &str = "climbgen-perf v1";

/// Performance parameters keyed by aircraft type code.
#[derive(Debug, Clone, Default)]
pub struct PerfDb {
    types: BTreeMap<String, AircraftPerf>,
}

impl PerfDb {
    pub fn new(fleet: impl IntoIterator<Item = AircraftPerf>) -> Self {
        let mut types = BTreeMap::new();
        for p in fleet {
            types.insert(p.type_code.clone(), p);
        }
        PerfDb { types }
    }

    pub fn get(&self, type_code: &str) -> Option<&AircraftPerf> {
        self.types.get(type_code)
    }

    pub fn iter(&self) -> impl Iterator<Item = &AircraftPerf> {
        self.types.values()
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    /// Serialize to the versioned structured-text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(PERF_HEADER);
        out.push('\n');
        for p in self.types.values() {
            let engine = match p.engine {
                EngineType::Jet => "jet",
                EngineType::Turboprop => "turboprop",
            };
            let _ = write!(
                out,
                "\naircraft {}\nengine {}\nmass_kg {}\nwing_area_m2 {}\ncd0 {}\n\
                 induced_k {}\nthrust_c1 {}\nthrust_c2 {}\nthrust_c3 {}\n\
                 cas_mach_transition {}\nservice_ceiling_m {}\nend\n",
                p.type_code,
                engine,
                p.mass,
                p.wing_area,
                p.cd0,
                p.induced_k,
                p.thrust_c1,
                p.thrust_c2,
                p.thrust_c3,
                p.cas_mach_transition,
                p.service_ceiling
            );
        }
        out
    }

    pub fn from_text(text: &str, origin: &str) -> Result<Self> {
        let err = |msg: String| Error::Parse {
            path: origin.to_string(),
            msg,
        };
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim() == PERF_HEADER => {}
            other => {
                return Err(err(format!(
                    "expected header '{PERF_HEADER}', found {:?}",
                    other.map(|(_, l)| l)
                )))
            }
        }
        let mut types = BTreeMap::new();
        let mut current: Option<(String, BTreeMap<String, String>)> = None;
        for (n, raw) in lines {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(char::is_whitespace)
                .map(|(k, v)| (k, v.trim()))
                .unwrap_or((line, ""));
            match key {
                "aircraft" => {
                    if current.is_some() {
                        return Err(err(format!("line {}: record not closed with 'end'", n + 1)));
                    }
                    current = Some((value.to_string(), BTreeMap::new()));
                }
                "end" => {
                    let (code, fields) =
                        current.take().ok_or_else(|| err(format!("line {}: stray 'end'", n + 1)))?;
                    let perf = build_perf(&code, &fields).map_err(|m| err(m))?;
                    types.insert(code, perf);
                }
                _ => match current.as_mut() {
                    Some((_, fields)) => {
                        fields.insert(key.to_string(), value.to_string());
                    }
                    None => return Err(err(format!("line {}: '{key}' outside a record", n + 1))),
                },
            }
        }
        if current.is_some() {
            return Err(err("unterminated aircraft record".to_string()));
        }
        Ok(PerfDb { types })
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text, &path.display().to_string())
    }
}

fn build_perf(code: &str, fields: &BTreeMap<String, String>) -> std::result::Result<AircraftPerf, String> {
    let num = |key: &str| -> std::result::Result<f64, String> {
        fields
            .get(key)
            .ok_or_else(|| format!("aircraft {code}: missing field '{key}'"))?
            .parse::<f64>()
            .map_err(|e| format!("aircraft {code}: field '{key}': {e}"))
    };
    let engine = match fields.get("engine").map(String::as_str) {
        Some("jet") => EngineType::Jet,
        Some("turboprop") => EngineType::Turboprop,
        other => return Err(format!("aircraft {code}: bad engine {other:?}")),
    };
    let perf = AircraftPerf {
        type_code: code.to_string(),
        mass: num("mass_kg")?,
        wing_area: num("wing_area_m2")?,
        cd0: num("cd0")?,
        induced_k: num("induced_k")?,
        thrust_c1: num("thrust_c1")?,
        thrust_c2: num("thrust_c2")?,
        thrust_c3: num("thrust_c3")?,
        engine,
        cas_mach_transition: num("cas_mach_transition")?,
        service_ceiling: num("service_ceiling_m")?,
    };
    if perf.mass <= 0.0 || perf.wing_area <= 0.0 || perf.cd0 <= 0.0 || perf.induced_k <= 0.0 {
        return Err(format!("aircraft {code}: non-positive airframe parameter"));
    }
    if perf.thrust_c1 <= 0.0 {
        return Err(format!("aircraft {code}: thrust_c1 must be > 0"));
    }
    Ok(perf)
}
