//! Report assembly and JSON encodings of the core types.

use gqg_core::algebra::{Algebra, UElement};
use gqg_core::lattice::{Weight, KL};
use gqg_core::laurent::U0Elem;
use gqg_core::verma::VermaVector;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "gqg-report/1";

/// A claimed identity and whether it held.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub identity: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub job: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub notices: Vec<String>,
    pub error: Option<String>,
}

impl Report {
    pub fn check(&mut self, identity: impl Into<String>, holds: bool) {
        self.checks.push(Check {
            identity: identity.into(),
            holds,
        });
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self, diagnostics: Option<Value>) -> Value {
        let mut v = json!({
            "schema": SCHEMA,
            "command": self.command,
            "job": self.job,
            "results": self.results,
            "checks": self.checks,
            "notices": self.notices,
            "verdict": if self.passed() { "pass" } else { "fail" },
        });
        if let Some(e) = &self.error {
            v["error"] = json!(e);
        }
        if let Some(d) = diagnostics {
            v["diagnostics"] = d;
        }
        v
    }
}

pub fn weight(w: &Weight) -> Value {
    json!(w.coords())
}

pub fn word(w: &[u8]) -> Value {
    json!(w.iter().map(|&i| i as u32 + 1).collect::<Vec<_>>())
}

pub fn kl(k: &KL) -> (Value, Value) {
    (weight(&k.k), weight(&k.l))
}

pub fn u0(x: &U0Elem) -> Value {
    Value::Array(
        x.terms()
            .map(|(t, c)| {
                let (k, l) = kl(t);
                json!({ "k": k, "l": l, "c": c.to_string() })
            })
            .collect(),
    )
}

/// Terms F-word · K_λL_μ · E-word with coefficients.
pub fn uelem(alg: &Algebra, x: &UElement) -> Value {
    Value::Array(
        x.terms()
            .map(|(m, c)| {
                let (k, l) = kl(&m.kl);
                let f = alg.f_word_of(&m.f).map(|w| word(&w)).unwrap_or(Value::Null);
                let e = alg.e_word_of(&m.e).map(|w| word(&w)).unwrap_or(Value::Null);
                json!({ "f": f, "k": k, "l": l, "e": e, "c": c.to_string() })
            })
            .collect(),
    )
}

pub fn verma(alg: &Algebra, v: &VermaVector) -> Value {
    Value::Array(
        v.terms()
            .map(|(id, c)| {
                let f = alg.f_word_of(id).map(|w| word(&w)).unwrap_or(Value::Null);
                json!({ "f": f, "c": c.to_string() })
            })
            .collect(),
    )
}
