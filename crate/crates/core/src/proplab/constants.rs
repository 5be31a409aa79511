use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = Ratio<i128>;

/// Which of the two stated values of `γ` an experiment uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaChoice {
    /// `(1 - ε)/64`.
    Formula,
    /// The printed decimal `0.146`.
    Decimal,
}

/// Constants of the structural argument. Values given as fractions are kept
/// as exact rationals; values given as decimals are `f64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PaperConstants {
    pub alpha: f64,
    #[serde(with = "ratio_text")]
    pub eps1: Rational,
    #[serde(with = "ratio_text")]
    pub eps2: Rational,
    #[serde(with = "ratio_text")]
    pub delta: Rational,
    #[serde(with = "ratio_text")]
    pub eps3: Rational,
    /// The `ε` of the Lemma 14 set.
    pub eps_gap: f64,
    pub xi: f64,
    pub gamma_formula: f64,
    pub gamma_decimal: f64,
    pub gamma: Option<GammaChoice>,
    #[serde(with = "ratio_text")]
    pub alpha_prime: Rational,
    pub phi: f64,
}

impl Default for PaperConstants {
    fn default() -> Self {
        Self::paper()
    }
}

impl PaperConstants {
    /// `δ = ε₁³ε₂/(320·110·16)` and `ε₃ = 16·80·δ/ε₁` for the given `ε₁, ε₂`.
    pub fn derived_delta_eps3(eps1: Rational, eps2: Rational) -> (Rational, Rational) {
        let delta = eps1 * eps1 * eps1 * eps2 / Rational::from_integer(320 * 110 * 16);
        let eps3 = Rational::from_integer(16 * 80) * delta / eps1;
        (delta, eps3)
    }

    pub fn paper() -> Self {
        let eps1 = Rational::new(1, 4200);
        let eps2 = Rational::new(1, 7200);
        let (delta, eps3) = Self::derived_delta_eps3(eps1, eps2);
        let eps_gap = 0.1;
        PaperConstants {
            alpha: 0.35,
            eps1,
            eps2,
            delta,
            eps3,
            eps_gap,
            xi: 0.001,
            gamma_formula: (1.0 - eps_gap) / 64.0,
            gamma_decimal: 0.146,
            gamma: None,
            // 2α/(1 - ε) with α = 35/100, ε = 1/10
            alpha_prime: Rational::new(2 * 35, 100) / (Rational::from_integer(1) - Rational::new(1, 10)),
            phi: 0.0001,
        }
    }

    pub fn eps1_f64(&self) -> f64 {
        to_f64(self.eps1)
    }

    pub fn eps2_f64(&self) -> f64 {
        to_f64(self.eps2)
    }

    pub fn eps3_f64(&self) -> f64 {
        to_f64(self.eps3)
    }

    pub fn delta_f64(&self) -> f64 {
        to_f64(self.delta)
    }

    pub fn gamma_value(&self, choice: GammaChoice) -> f64 {
        match choice {
            GammaChoice::Formula => self.gamma_formula,
            GammaChoice::Decimal => self.gamma_decimal,
        }
    }

    /// The requirement `δ < γφ/2` under both readings of `γ`.
    pub fn delta_check(&self) -> DeltaCheck {
        let delta = self.delta_f64();
        let formula = delta < self.gamma_formula * self.phi / 2.0;
        let decimal = delta < self.gamma_decimal * self.phi / 2.0;
        DeltaCheck {
            delta,
            formula,
            decimal,
            selected: self.gamma.map(|g| match g {
                GammaChoice::Formula => formula,
                GammaChoice::Decimal => decimal,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaCheck {
    pub delta: f64,
    pub formula: bool,
    pub decimal: bool,
    pub selected: Option<bool>,
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Rationals as `"p/q"` strings (plain integers accepted on input).
mod ratio_text {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&Text(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        let r: Rational = text
            .trim()
            .parse()
            .map_err(|e| serde::de::Error::custom(format!("bad rational {text:?}: {e}")))?;
        if *r.denom() <= 0 {
            return Err(serde::de::Error::custom(format!("bad rational {text:?}")));
        }
        Ok(r)
    }

    struct Text<'a>(&'a Rational);

    impl fmt::Display for Text<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_values() {
        let c = PaperConstants::paper();
        assert_eq!(c.delta, Rational::new(1, 300_429_803_520_000_000_000));
        assert_eq!(c.eps3, Rational::new(1, 55_883_520_000_000));
        assert_eq!(c.alpha_prime, Rational::new(7, 9));
        assert_eq!(c.gamma_formula, 0.0140625);
        let check = c.delta_check();
        assert!(check.formula && check.decimal);
        assert_eq!(check.selected, None);
    }

    #[test]
    fn json_round_trip() {
        let mut c = PaperConstants::paper();
        c.gamma = Some(GammaChoice::Formula);
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"eps1\":\"1/4200\""));
        let back: PaperConstants = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        let partial: PaperConstants = serde_json::from_str(r#"{"alpha":0.3,"eps1":"1/100"}"#).unwrap();
        assert_eq!(partial.alpha, 0.3);
        assert_eq!(partial.eps1, Rational::new(1, 100));
        assert!(serde_json::from_str::<PaperConstants>(r#"{"eps1":"x"}"#).is_err());
    }
}
