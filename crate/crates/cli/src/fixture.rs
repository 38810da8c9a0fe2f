//! Fixture documents: a form given by moments, a recurrence or a Dirac mass,
//! optionally with the equation it is claimed to satisfy.

use qlh_core::{parse_scalar, MomentForm, Poly, QParam, QlhError, RecurrencePair, Scalar};
use serde_json::{Map, Value};

/// Where the form comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum FormSource {
    Moments(Vec<Scalar>),
    Recurrence(RecurrencePair),
    Dirac(Scalar),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixtureSpec {
    pub form: FormSource,
    pub phi: Option<Poly>,
    pub psi: Option<Poly>,
    pub b: Option<Poly>,
    pub q: Option<QParam>,
}

/// A parse failure, located either by line/column or by JSON path.
#[derive(Debug, PartialEq, Eq)]
pub struct FixtureError {
    pub location: String,
    pub message: String,
}

impl std::fmt::Display for FixtureError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "fixture error at {}: {}", self.location, self.message)
    }
}

fn err(location: &str, message: impl Into<String>) -> FixtureError {
    FixtureError {
        location: location.to_string(),
        message: message.into(),
    }
}

fn scalar(v: &Value, path: &str) -> Result<Scalar, FixtureError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => {
            return Err(err(
                path,
                "expected a rational as a string (\"p/q\") or an integer",
            ))
        }
    };
    parse_scalar(&text).map_err(|e| err(path, e.to_string()))
}

fn scalars(v: &Value, path: &str) -> Result<Vec<Scalar>, FixtureError> {
    let items = v.as_array().ok_or_else(|| err(path, "expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, x)| scalar(x, &format!("{path}[{i}]")))
        .collect()
}

fn poly(v: &Value, path: &str) -> Result<Poly, FixtureError> {
    Ok(Poly::new(scalars(v, path)?))
}

fn recurrence(v: &Value, path: &str) -> Result<RecurrencePair, FixtureError> {
    let obj = v
        .as_object()
        .ok_or_else(|| err(path, "expected an object with betas and gammas"))?;
    check_keys(obj, path, &["betas", "gammas"])?;
    let get = |k: &str| {
        obj.get(k)
            .ok_or_else(|| err(path, format!("missing \"{k}\"")))
    };
    let betas = scalars(get("betas")?, &format!("{path}.betas"))?;
    let gammas = scalars(get("gammas")?, &format!("{path}.gammas"))?;
    if let Some(i) = gammas
        .iter()
        .position(|g| g == &Scalar::from_integer(0.into()))
    {
        return Err(err(&format!("{path}.gammas[{i}]"), "gamma must be nonzero"));
    }
    RecurrencePair::new(betas, gammas).map_err(|e| err(path, e.to_string()))
}

fn check_keys(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<(), FixtureError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(err(
            &format!("{path}.{k}"),
            format!("unknown key; expected one of {allowed:?}"),
        )),
        None => Ok(()),
    }
}

/// Parses a fixture document. Exactly one of "moments", "recurrence" and
/// "dirac" is required; "phi", "psi", "b" (ascending coefficients) and "q"
/// are optional.
pub fn parse_fixture(text: &str) -> Result<FixtureSpec, FixtureError> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        err(
            &format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = v
        .as_object()
        .ok_or_else(|| err("$", "expected a JSON object"))?;
    check_keys(
        obj,
        "$",
        &["moments", "recurrence", "dirac", "phi", "psi", "b", "q"],
    )?;

    let q = match obj.get("q") {
        Some(x) => Some(QParam::new(scalar(x, "$.q")?).map_err(|e| err("$.q", e.to_string()))?),
        None => None,
    };
    let opt_poly = |k: &str| obj.get(k).map(|x| poly(x, &format!("$.{k}"))).transpose();
    let (phi, psi, b) = (opt_poly("phi")?, opt_poly("psi")?, opt_poly("b")?);

    let sources: Vec<&str> = ["moments", "recurrence", "dirac"]
        .into_iter()
        .filter(|k| obj.contains_key(*k))
        .collect();
    let form = match sources.as_slice() {
        ["moments"] => {
            let m = scalars(&obj["moments"], "$.moments")?;
            if m.is_empty() {
                return Err(err("$.moments", "at least one moment is required"));
            }
            FormSource::Moments(m)
        }
        ["recurrence"] => FormSource::Recurrence(recurrence(&obj["recurrence"], "$.recurrence")?),
        ["dirac"] => FormSource::Dirac(scalar(&obj["dirac"], "$.dirac")?),
        [] => {
            return Err(err(
                "$",
                "one of \"moments\", \"recurrence\", \"dirac\" is required",
            ))
        }
        _ => {
            return Err(err(
                "$",
                format!("only one form source allowed, got {sources:?}"),
            ))
        }
    };
    Ok(FixtureSpec {
        form,
        phi,
        psi,
        b,
        q,
    })
}

fn json_scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

/// Canonical serialization; `parse_fixture` reads it back unchanged.
pub fn to_json(spec: &FixtureSpec) -> String {
    let mut obj = Map::new();
    match &spec.form {
        FormSource::Moments(m) => {
            obj.insert("moments".into(), json_scalars(m));
        }
        FormSource::Recurrence(r) => {
            let mut inner = Map::new();
            inner.insert("betas".into(), json_scalars(&r.betas));
            inner.insert("gammas".into(), json_scalars(&r.gammas));
            obj.insert("recurrence".into(), Value::Object(inner));
        }
        FormSource::Dirac(c) => {
            obj.insert("dirac".into(), Value::String(c.to_string()));
        }
    }
    for (k, p) in [("phi", &spec.phi), ("psi", &spec.psi), ("b", &spec.b)] {
        if let Some(p) = p {
            obj.insert(k.into(), json_scalars(p.coeffs()));
        }
    }
    if let Some(q) = &spec.q {
        obj.insert("q".into(), Value::String(q.value().to_string()));
    }
    serde_json::to_string(&Value::Object(obj)).expect("serializable")
}

/// Largest order N whose moments the recurrence determines: beta up to
/// (N-1)/2 and gamma up to N/2.
pub fn recurrence_order(r: &RecurrencePair) -> usize {
    let nb = r.betas.len();
    let ng = r.gammas.len();
    if nb == 0 {
        return 0;
    }
    (2 * nb - 1).min(2 * ng)
}

impl FixtureSpec {
    /// The form at the requested order (defaulting to what the source
    /// determines, or 40 for a Dirac mass).
    pub fn form(&self, order: Option<usize>) -> Result<MomentForm, String> {
        match &self.form {
            FormSource::Moments(m) => {
                if let Some(n) = order {
                    if m.len() != n + 1 {
                        return Err(format!(
                            "moments: order {n} needs {} entries, the fixture has {}",
                            n + 1,
                            m.len()
                        ));
                    }
                }
                MomentForm::new(m.clone()).map_err(|e| e.to_string())
            }
            FormSource::Recurrence(r) => {
                let avail = recurrence_order(r);
                let n = order.unwrap_or(avail);
                if n > avail {
                    return Err(format!(
                        "recurrence determines moments only up to order {avail}, {n} requested"
                    ));
                }
                qlh_core::moments_from_recurrence(r, n).map_err(|e: QlhError| e.to_string())
            }
            FormSource::Dirac(c) => Ok(MomentForm::dirac(c, order.unwrap_or(40))),
        }
    }
}
