//! Tau pairs `(g, f)` together with the metadata the verifiers need.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::C64;
use crate::solitons::SolitonSpec;
use crate::superpoly::{Frame, SuperPoly, SuperPolyDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Focusing,
    Defocusing,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Focusing => write!(f, "focusing"),
            Regime::Defocusing => write!(f, "defocusing"),
        }
    }
}

impl Regime {
    /// Velocity `s` of the substitution `X = x + s·t` from the comoving
    /// frame to the laboratory frame.
    pub fn frame_velocity(self, sigma: f64) -> f64 {
        match self {
            Regime::Focusing => 3.0 * sigma * sigma,
            Regime::Defocusing => -3.0 * sigma * sigma,
        }
    }

    /// Sign in front of the cubic and σ-terms of the nonlinear equation.
    pub fn nonlinear_sign(self) -> f64 {
        match self {
            Regime::Focusing => 1.0,
            Regime::Defocusing => -1.0,
        }
    }
}

/// Constant in `Φ = c·D log(g/f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prefactor {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "1")]
    One,
}

impl Prefactor {
    pub fn for_regime(regime: Regime) -> Self {
        match regime {
            Regime::Focusing => Prefactor::I,
            Regime::Defocusing => Prefactor::One,
        }
    }

    pub fn value(self) -> C64 {
        match self {
            Prefactor::I => C64::new(0.0, 1.0),
            Prefactor::One => C64::new(1.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauPair {
    pub g: SuperPoly,
    pub f: SuperPoly,
    pub regime: Regime,
    pub frame: Frame,
    pub sigma: f64,
    pub prefactor: Prefactor,
    /// The description this pair was built from, when known.
    pub source: Option<SolitonSpec>,
}

impl TauPair {
    pub fn from_parts(g: SuperPoly, f: SuperPoly, regime: Regime, frame: Frame, sigma: f64) -> Self {
        TauPair {
            g,
            f,
            regime,
            frame,
            sigma,
            prefactor: Prefactor::for_regime(regime),
            source: None,
        }
    }

    pub fn with_source(mut self, spec: SolitonSpec) -> Self {
        self.source = Some(spec);
        self
    }

    pub fn num_generators(&self) -> usize {
        self.g.num_generators()
    }

    /// Re-expresses both tau functions in the requested frame.
    pub fn to_frame(&self, frame: Frame) -> TauPair {
        if frame == self.frame {
            return self.clone();
        }
        let s = self.regime.frame_velocity(self.sigma);
        let s = if frame == Frame::Xt { s } else { -s };
        TauPair {
            g: self.g.frame_shift(s),
            f: self.f.frame_shift(s),
            frame,
            ..self.clone()
        }
    }

    pub fn map(&self, op: impl Fn(&SuperPoly) -> SuperPoly) -> TauPair {
        TauPair {
            g: op(&self.g),
            f: op(&self.f),
            ..self.clone()
        }
    }

    pub fn to_doc(&self) -> TauDoc {
        TauDoc {
            regime: self.regime,
            sigma: self.sigma,
            frame: self.frame,
            prefactor: self.prefactor,
            spec: self.source.clone(),
            g: self.g.to_doc(self.frame),
            f: self.f.to_doc(self.frame),
        }
    }

    pub fn from_doc(doc: &TauDoc) -> Result<Self> {
        let (g, gf) = SuperPoly::from_doc(&doc.g)?;
        let (f, ff) = SuperPoly::from_doc(&doc.f)?;
        if gf != doc.frame || ff != doc.frame {
            return Err(Error::Format(format!(
                "tau frame {} disagrees with g ({gf}) or f ({ff})",
                doc.frame
            )));
        }
        if g.num_generators() != f.num_generators() {
            return Err(Error::Dimension {
                left: g.num_generators(),
                right: f.num_generators(),
            });
        }
        if doc.prefactor != Prefactor::for_regime(doc.regime) {
            return Err(Error::Format(format!(
                "prefactor {:?} does not belong to the {} regime",
                doc.prefactor, doc.regime
            )));
        }
        if !(doc.sigma.is_finite() && doc.sigma != 0.0) {
            return Err(Error::Format("sigma must be finite and nonzero".into()));
        }
        Ok(TauPair {
            g,
            f,
            regime: doc.regime,
            frame: doc.frame,
            sigma: doc.sigma,
            prefactor: doc.prefactor,
            source: doc.spec.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("tau documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TauDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

/// JSON document form of a [`TauPair`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TauDoc {
    pub regime: Regime,
    pub sigma: f64,
    pub frame: Frame,
    pub prefactor: Prefactor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<SolitonSpec>,
    pub g: SuperPolyDoc,
    pub f: SuperPolyDoc,
}
