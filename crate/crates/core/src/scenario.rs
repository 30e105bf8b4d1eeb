//! JSON scenario files.
//!
//! ```json
//! {"shift": {"p": 0.5, "q_re": 0.866, "q_im": 0.0},
//!  "coin": {"kind": "step",
//!           "limit_minus": {"a": 0.9, "b_re": 0.436, "b_im": 0.0},
//!           "limit_plus": {"a": 0.0, "b_re": 1.0, "b_im": 0.0}}}
//! ```
//!
//! Unknown keys are rejected. A `step` coin takes at most one breakpoint
//! (default: the jump sits at 0); a `multistep` coin needs at least one and its
//! last breakpoint must equal `limit_plus`; a `tanh` coin needs `width`, uses
//! the optional `phi` (default 0) and its limits must be the tanh limits.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CoinProfile, CoinSite, ProfileKind, ShiftParams, WalkSpec};

const SITE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftJson {
    pub p: f64,
    pub q_re: f64,
    pub q_im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteJson {
    pub a: f64,
    pub b_re: f64,
    pub b_im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BreakpointJson {
    pub x: i64,
    pub a: f64,
    pub b_re: f64,
    pub b_im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindJson {
    Step,
    Multistep,
    Tanh,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoinJson {
    pub kind: KindJson,
    pub limit_minus: SiteJson,
    pub limit_plus: SiteJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub breakpoints: Vec<BreakpointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub shift: ShiftJson,
    pub coin: CoinJson,
}

fn site(s: &SiteJson) -> Result<CoinSite> {
    CoinSite::new(s.a, Complex64::new(s.b_re, s.b_im))
}

fn site_json(s: CoinSite) -> SiteJson {
    SiteJson { a: s.a(), b_re: s.b().re, b_im: s.b().im }
}

fn close(x: CoinSite, y: CoinSite) -> bool {
    (x.a() - y.a()).abs() <= SITE_TOL && (x.b() - y.b()).norm() <= SITE_TOL
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| schema(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scenario serializes")
    }

    pub fn from_spec(spec: &WalkSpec) -> Self {
        let q = spec.shift.q();
        let shift = ShiftJson { p: spec.shift.p(), q_re: q.re, q_im: q.im };
        let limit_minus = site_json(spec.coin.limit_minus());
        let limit_plus = site_json(spec.coin.limit_plus());
        let coin = match &spec.coin {
            CoinProfile::Piecewise { kind, breakpoints, .. } => CoinJson {
                kind: if *kind == ProfileKind::Step { KindJson::Step } else { KindJson::Multistep },
                limit_minus,
                limit_plus,
                breakpoints: breakpoints
                    .iter()
                    .map(|&(x, s)| BreakpointJson { x, a: s.a(), b_re: s.b().re, b_im: s.b().im })
                    .collect(),
                width: None,
                phi: None,
            },
            CoinProfile::Tanh { width, phi, .. } => CoinJson {
                kind: KindJson::Tanh,
                limit_minus,
                limit_plus,
                breakpoints: Vec::new(),
                width: Some(*width),
                phi: Some(*phi),
            },
        };
        Scenario { shift, coin }
    }

    /// Validates the scenario and builds the walk it describes.
    pub fn to_spec(&self) -> Result<WalkSpec> {
        let shift = ShiftParams::new(self.shift.p, Complex64::new(self.shift.q_re, self.shift.q_im))?;
        let c = &self.coin;
        let minus = site(&c.limit_minus)?;
        let plus = site(&c.limit_plus)?;
        let bps = c
            .breakpoints
            .iter()
            .map(|b| Ok((b.x, CoinSite::new(b.a, Complex64::new(b.b_re, b.b_im))?)))
            .collect::<Result<Vec<_>>>()?;
        if c.kind != KindJson::Tanh && (c.width.is_some() || c.phi.is_some()) {
            return Err(schema("`width` and `phi` apply only to tanh coins"));
        }
        let coin = match c.kind {
            KindJson::Step => match bps.as_slice() {
                [] => CoinProfile::step(minus, plus, 0),
                [(x, s)] if close(*s, plus) => CoinProfile::step(minus, plus, *x),
                [_] => return Err(schema("step breakpoint must equal `limit_plus`")),
                _ => return Err(schema("a step coin takes at most one breakpoint")),
            },
            KindJson::Multistep => {
                match bps.last() {
                    None => return Err(schema("a multistep coin needs at least one breakpoint")),
                    Some(&(_, s)) if !close(s, plus) => {
                        return Err(schema("last breakpoint must equal `limit_plus`"))
                    }
                    _ => {}
                }
                CoinProfile::multi_step(minus, bps).map_err(|e| schema(e.to_string()))?
            }
            KindJson::Tanh => {
                if !bps.is_empty() {
                    return Err(schema("a tanh coin takes no breakpoints"));
                }
                let width = c.width.ok_or_else(|| schema("a tanh coin needs `width`"))?;
                let phi = c.phi.unwrap_or(0.0);
                let profile =
                    CoinProfile::tanh(minus.a(), plus.a(), width, phi).map_err(|e| schema(e.to_string()))?;
                if !close(profile.limit_minus(), minus) || !close(profile.limit_plus(), plus) {
                    return Err(schema("tanh limits must satisfy b = e^{i phi} sqrt(1 - a^2)"));
                }
                profile
            }
        };
        WalkSpec::new(shift, coin)
    }
}
