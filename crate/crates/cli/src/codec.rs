//! JSON encodings of fields, entries, matrices and witness data, in both
//! directions. Entries are strings so that nothing passes through a float.

use std::fmt;
use std::str::FromStr;

use nilmat::congruence::{Checks, CongruenceData, Denominators};
use nilmat::fields::RatFn;
use nilmat::splitting::JordanPair;
use nilmat::{Domain, Elem, Field, InfiniteWitness, Matrix, Poly, Slp, Step, Subspace, Witness, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

/// Location is a JSON path such as `$.generators[1][0][2]`; `line`/`column`
/// are set for syntax errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub path: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            _ => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError { path: "$".into(), message: e.to_string(), line: Some(e.line()), column: Some(e.column()) }
    }
}

pub type Parsed<T> = Result<T, ParseError>;

/// A value together with its path from the document root.
pub struct At<'a> {
    pub value: &'a Value,
    pub path: String,
}

impl<'a> At<'a> {
    pub fn root(value: &'a Value) -> At<'a> {
        At { value, path: "$".into() }
    }

    pub fn fail<T>(&self, msg: impl Into<String>) -> Parsed<T> {
        Err(ParseError { path: self.path.clone(), message: msg.into(), line: None, column: None })
    }

    pub fn key(&self, k: &str) -> Parsed<At<'a>> {
        match self.value.get(k) {
            Some(v) => Ok(At { value: v, path: format!("{}.{k}", self.path) }),
            None => self.fail(format!("missing field `{k}`")),
        }
    }

    /// `None` for absent or null.
    pub fn opt(&self, k: &str) -> Option<At<'a>> {
        match self.value.get(k) {
            None | Some(Value::Null) => None,
            Some(v) => Some(At { value: v, path: format!("{}.{k}", self.path) }),
        }
    }

    pub fn items(&self) -> Parsed<Vec<At<'a>>> {
        match self.value.as_array() {
            Some(a) => Ok(a
                .iter()
                .enumerate()
                .map(|(i, v)| At { value: v, path: format!("{}[{i}]", self.path) })
                .collect()),
            None => self.fail("expected an array"),
        }
    }

    pub fn str(&self) -> Parsed<&'a str> {
        self.value.as_str().map_or_else(|| self.fail("expected a string"), Ok)
    }

    pub fn u64(&self) -> Parsed<u64> {
        match self.value {
            Value::Number(n) => n.as_u64().map_or_else(|| self.fail("expected a nonnegative integer"), Ok),
            Value::String(s) => s.parse().or_else(|_| self.fail("expected a nonnegative integer")),
            _ => self.fail("expected a nonnegative integer"),
        }
    }

    pub fn u128(&self) -> Parsed<u128> {
        match self.value {
            Value::Number(n) => n.as_u64().map_or_else(|| self.fail("expected a nonnegative integer"), |v| Ok(v as u128)),
            Value::String(s) => s.parse().or_else(|_| self.fail("expected a nonnegative integer")),
            _ => self.fail("expected a nonnegative integer"),
        }
    }

    pub fn usize(&self) -> Parsed<usize> {
        self.u64().map(|v| v as usize)
    }

    pub fn bool(&self) -> Parsed<bool> {
        self.value.as_bool().map_or_else(|| self.fail("expected a boolean"), Ok)
    }

    fn bigint(&self) -> Parsed<BigInt> {
        match self.value {
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(BigInt::from_str(&n.to_string()).unwrap()),
            Value::String(s) => BigInt::from_str(s.trim()).or_else(|_| self.fail(format!("`{s}` is not an integer"))),
            _ => self.fail("expected an integer"),
        }
    }

    fn rational(&self) -> Parsed<BigRational> {
        let s = match self.value {
            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            Value::String(s) => s.trim().to_string(),
            _ => return self.fail("expected a rational string \"a/b\""),
        };
        if let Some((_, d)) = s.split_once('/') {
            if BigInt::from_str(d.trim()).is_ok_and(|d| d == BigInt::from(0)) {
                return self.fail(format!("`{s}` has zero denominator"));
            }
        }
        BigRational::from_str(&s).or_else(|_| self.fail(format!("`{s}` is not a rational number")))
    }
}

/// u128 as a JSON number when it fits in u64, else a decimal string.
pub fn u128_json(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| Value::String(v.to_string()), Value::from)
}

// ---- fields ----

pub fn field_json(f: &Field) -> Value {
    match f {
        Field::Rationals => json!({"kind": "Q"}),
        Field::Finite(ff) if ff.l == 1 => json!({"kind": "GF", "p": ff.p, "l": 1}),
        Field::Finite(ff) => json!({"kind": "GF", "p": ff.p, "l": ff.l, "modulus": ff.modulus}),
        Field::Number(nf) => {
            json!({"kind": "NF", "minpoly": nf.minpoly.iter().map(|c| c.to_string()).collect::<Vec<_>>()})
        }
        Field::Function(b) => json!({"kind": "FF", "base": field_json(b)}),
    }
}

/// `seed` picks the modulus of GF(p^l) when none is given.
pub fn parse_field(at: &At, seed: u64) -> Parsed<Field> {
    let kind = at.key("kind")?;
    let built = match kind.str()? {
        "Q" => Ok(Field::Rationals),
        "GF" => {
            let p = at.key("p")?.u64()?;
            let l = at.opt("l").map_or(Ok(1), |x| x.usize())?;
            match at.opt("modulus") {
                Some(m) => {
                    let coeffs = m.items()?.iter().map(|c| c.u64()).collect::<Parsed<Vec<_>>>()?;
                    if coeffs.len() != l + 1 {
                        return m.fail(format!("modulus must have {} coefficients", l + 1));
                    }
                    Field::finite_with_modulus(p, coeffs)
                }
                None => Field::finite(p, l, seed),
            }
        }
        "NF" => {
            let m = at.key("minpoly")?;
            let coeffs = m.items()?.iter().map(|c| c.bigint()).collect::<Parsed<Vec<_>>>()?;
            Field::number(coeffs)
        }
        "FF" => Field::function(parse_field(&at.key("base")?, seed)?),
        other => return kind.fail(format!("unknown field kind `{other}`")),
    };
    built.or_else(|e| at.fail(e.to_string()))
}

// ---- entries ----

fn fp_residue(e: &Elem) -> u64 {
    e.as_residue().expect("prime-field element")
}

pub fn elem_json(e: &Elem) -> Value {
    match e {
        Elem::Q(q) => Value::String(q.to_string()),
        Elem::Fp(v) => Value::String(v.to_string()),
        Elem::Fq(v) => Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect()),
        Elem::Nf(v) => Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect()),
        Elem::Rf(r) => json!({"num": poly_json(&r.num), "den": poly_json(&r.den)}),
    }
}

pub fn parse_elem(at: &At, f: &Field) -> Parsed<Elem> {
    match f {
        Field::Rationals => Ok(Elem::Q(at.rational()?)),
        Field::Finite(ff) => {
            if ff.l > 1 {
                if let Value::Array(_) = at.value {
                    let items = at.items()?;
                    if items.len() > ff.l {
                        return at.fail(format!("at most {} coefficients", ff.l));
                    }
                    let fp = Field::prime(ff.p).expect("prime");
                    let mut v = vec![0; ff.l];
                    for (c, it) in v.iter_mut().zip(&items) {
                        *c = fp_residue(&parse_elem(it, &fp)?);
                    }
                    return Ok(Elem::Fq(v));
                }
            }
            let q = at.rational()?;
            f.from_rational(&q).map_or_else(|| at.fail(format!("denominator of {q} vanishes mod {}", ff.p)), Ok)
        }
        Field::Number(nf) => {
            if let Value::Array(_) = at.value {
                let items = at.items()?;
                if items.len() > nf.degree() {
                    return at.fail(format!("at most {} coefficients", nf.degree()));
                }
                let mut v = vec![BigRational::from(BigInt::from(0)); nf.degree()];
                for (c, it) in v.iter_mut().zip(&items) {
                    *c = it.rational()?;
                }
                return Ok(Elem::Nf(v));
            }
            Ok(f.from_rational(&at.rational()?).expect("characteristic 0"))
        }
        Field::Function(b) => {
            if !at.value.is_object() {
                let c = parse_elem(at, b)?;
                return Ok(Elem::Rf(Box::new(RatFn { num: Poly::new(vec![c]), den: Poly::one(b) })));
            }
            let num = parse_poly(&at.key("num")?, b)?;
            let den_at = at.opt("den");
            let den = match &den_at {
                Some(d) => parse_poly(d, b)?,
                None => Poly::one(b),
            };
            if den.is_zero() {
                return den_at.unwrap().fail("zero denominator");
            }
            let lift = |p: Poly| Elem::Rf(Box::new(RatFn { num: p, den: Poly::one(b) }));
            Ok(f.div(&lift(num), &lift(den)).expect("nonzero denominator"))
        }
    }
}

pub fn poly_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(elem_json).collect())
}

pub fn parse_poly(at: &At, f: &Field) -> Parsed<Poly> {
    Ok(Poly::new(at.items()?.iter().map(|c| parse_elem(c, f)).collect::<Parsed<Vec<_>>>()?))
}

// ---- matrices and subspaces ----

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(elem_json).collect())).collect())
}

pub fn parse_matrix(at: &At, f: &Field) -> Parsed<Matrix> {
    let rows = at.items()?;
    if rows.is_empty() {
        return at.fail("matrix has no rows");
    }
    let mut out = Vec::with_capacity(rows.len());
    for r in &rows {
        let cells = r.items()?;
        if cells.len() != rows.len() {
            return r.fail(format!("row has {} entries, matrix is not square ({} rows)", cells.len(), rows.len()));
        }
        out.push(cells.iter().map(|c| parse_elem(c, f)).collect::<Parsed<Vec<_>>>()?);
    }
    Ok(Matrix::from_rows(out).expect("square rows"))
}

pub fn matrices_json(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(matrix_json).collect())
}

pub fn parse_matrices(at: &At, f: &Field) -> Parsed<Vec<Matrix>> {
    at.items()?.iter().map(|m| parse_matrix(m, f)).collect()
}

pub fn subspace_json(s: &Subspace) -> Value {
    json!({
        "ambient": s.ambient(),
        "dim": s.dim(),
        "basis": s.basis().iter().map(|v| v.iter().map(elem_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn parse_subspace(at: &At, f: &Field) -> Parsed<Subspace> {
    let n = at.key("ambient")?.usize()?;
    let mut vs = Vec::new();
    for v in at.key("basis")?.items()? {
        let coords = v.items()?;
        if coords.len() != n {
            return v.fail(format!("expected {n} coordinates"));
        }
        vs.push(coords.iter().map(|c| parse_elem(c, f)).collect::<Parsed<Vec<_>>>()?);
    }
    Ok(Subspace::span(vs, n, f))
}

// ---- programs and words ----

pub fn slp_json(s: &Slp) -> Value {
    Value::Array(
        s.steps
            .iter()
            .map(|st| match *st {
                Step::Identity => json!(["id"]),
                Step::Gen(i) => json!(["gen", i]),
                Step::Mul(a, b) => json!(["mul", a, b]),
                Step::Inv(a) => json!(["inv", a]),
                Step::Pow(a, e) => json!(["pow", a, e.to_string()]),
            })
            .collect(),
    )
}

pub fn parse_slp(at: &At) -> Parsed<Slp> {
    let mut steps = Vec::new();
    for st in at.items()? {
        let parts = st.items()?;
        let Some(op) = parts.first() else {
            return st.fail("empty step");
        };
        let arg = |i: usize| parts.get(i).map_or_else(|| st.fail("missing step operand"), |a| a.usize());
        steps.push(match (op.str()?, parts.len()) {
            ("id", 1) => Step::Identity,
            ("gen", 2) => Step::Gen(arg(1)?),
            ("mul", 3) => Step::Mul(arg(1)?, arg(2)?),
            ("inv", 2) => Step::Inv(arg(1)?),
            ("pow", 3) => Step::Pow(arg(1)?, parts[2].u128()?),
            (name, _) => return st.fail(format!("malformed step `{name}`")),
        });
    }
    Ok(Slp { steps })
}

pub fn word_json(w: &Word) -> Value {
    Value::Array(w.0.iter().map(|&(g, e)| json!([g, e])).collect())
}

pub fn parse_word(at: &At) -> Parsed<Word> {
    let mut out = Vec::new();
    for letter in at.items()? {
        let parts = letter.items()?;
        if parts.len() != 2 {
            return letter.fail("expected [generator, exponent]");
        }
        let e = match parts[1].value.as_i64() {
            Some(e @ (-1 | 1)) => e as i8,
            _ => return parts[1].fail("exponent must be 1 or -1"),
        };
        out.push((parts[0].usize()?, e));
    }
    Ok(Word(out))
}

fn usizes(at: &At) -> Parsed<Vec<usize>> {
    at.items()?.iter().map(|x| x.usize()).collect()
}

// ---- Jordan pairs and congruence data ----

pub fn pairs_json(ps: &[JordanPair]) -> Value {
    Value::Array(ps.iter().map(|p| json!({"s": matrix_json(&p.s), "u": matrix_json(&p.u)})).collect())
}

fn parse_pairs(at: &At, f: &Field) -> Parsed<Vec<JordanPair>> {
    at.items()?
        .iter()
        .map(|p| Ok(JordanPair { s: parse_matrix(&p.key("s")?, f)?, u: parse_matrix(&p.key("u")?, f)? }))
        .collect()
}

pub fn congruence_json(cd: &CongruenceData) -> Value {
    let c = &cd.checks;
    json!({
        "source": field_json(&cd.source),
        "pi": {
            "ints": cd.pi.ints.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
            "polys": cd.pi.polys.iter().map(poly_json).collect::<Vec<_>>(),
        },
        "pi_eval": cd.pi_eval.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
        "p": cd.p,
        "target": field_json(&cd.target),
        "alpha_image": cd.alpha_image.as_ref().map(elem_json),
        "eval_point": cd.eval_point.as_ref().map(elem_json),
        "checks": {
            "odd": c.odd,
            "avoids_pi": c.avoids_pi,
            "squarefree_minpolys": c.squarefree_minpolys,
            "unramified": c.unramified,
            "p_gt_n": c.p_gt_n,
        },
    })
}

pub fn parse_congruence(at: &At) -> Parsed<CongruenceData> {
    let source = parse_field(&at.key("source")?, 1)?;
    let target = parse_field(&at.key("target")?, 1)?;
    let pi = at.key("pi")?;
    let ints = pi.key("ints")?.items()?.iter().map(|z| z.bigint()).collect::<Parsed<Vec<_>>>()?;
    let base = source.function_base().cloned().unwrap_or(Field::Rationals);
    let polys = pi.key("polys")?.items()?.iter().map(|h| parse_poly(h, &base)).collect::<Parsed<Vec<_>>>()?;
    let pi_eval = at.key("pi_eval")?.items()?.iter().map(|z| z.bigint()).collect::<Parsed<Vec<_>>>()?;
    let point_field = match &source {
        Field::Function(b) if matches!(**b, Field::Rationals) => Field::Rationals,
        _ => target.clone(),
    };
    let alpha_image = at.opt("alpha_image").map(|a| parse_elem(&a, &target)).transpose()?;
    let eval_point = at.opt("eval_point").map(|a| parse_elem(&a, &point_field)).transpose()?;
    let ch = at.key("checks")?;
    let checks = Checks {
        odd: ch.key("odd")?.bool()?,
        avoids_pi: ch.key("avoids_pi")?.bool()?,
        squarefree_minpolys: ch.key("squarefree_minpolys")?.bool()?,
        unramified: ch.opt("unramified").map(|u| u.bool()).transpose()?,
        p_gt_n: ch.key("p_gt_n")?.bool()?,
    };
    Ok(CongruenceData {
        source,
        pi: Denominators { ints, polys },
        pi_eval,
        p: at.key("p")?.u64()?,
        target,
        alpha_image,
        eval_point,
        checks,
    })
}

// ---- witnesses ----

fn domain_json(d: &Domain) -> Value {
    match d {
        Domain::Source => json!({"kind": "source"}),
        Domain::SemisimpleImage { pairs, congruence } => json!({
            "kind": "semisimple_image",
            "pairs": pairs_json(pairs),
            "congruence": congruence_json(congruence),
        }),
        Domain::Adjoint => json!({"kind": "adjoint"}),
    }
}

fn parse_domain(at: &At, f: &Field) -> Parsed<Domain> {
    let kind = at.key("kind")?;
    match kind.str()? {
        "source" => Ok(Domain::Source),
        "semisimple_image" => Ok(Domain::SemisimpleImage {
            pairs: parse_pairs(&at.key("pairs")?, f)?,
            congruence: parse_congruence(&at.key("congruence")?)?,
        }),
        "adjoint" => Ok(Domain::Adjoint),
        other => kind.fail(format!("unknown domain `{other}`")),
    }
}

fn tagged(kind: &str, fields: Value) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), Value::String(kind.into()));
    if let Value::Object(rest) = fields {
        m.extend(rest);
    }
    Value::Object(m)
}

pub fn witness_json(w: &Witness) -> Value {
    let body = match w {
        Witness::JordanCommutator { pairs, u, s } => json!({"pairs": pairs_json(pairs), "u": u, "s": s}),
        Witness::NonUnipotentFlag { pairs, w } => json!({"pairs": pairs_json(pairs), "w": subspace_json(w)}),
        Witness::LongCommutator { domain, slp, start, multipliers, bound } => json!({
            "domain": domain_json(domain), "slp": slp_json(slp),
            "start": start, "multipliers": multipliers, "bound": bound,
        }),
        Witness::NonCommutingPrimeParts { domain, slp, x, y } => {
            json!({"domain": domain_json(domain), "slp": slp_json(slp), "x": x, "y": y})
        }
        Witness::NonPrimePowerElement { domain, slp, component, word, prime } => json!({
            "domain": domain_json(domain), "slp": slp_json(slp),
            "component": component, "word": word_json(word), "prime": prime,
        }),
        Witness::KernelNotCentral { pairs, congruence, relator, generator } => json!({
            "pairs": pairs_json(pairs), "congruence": congruence_json(congruence),
            "relator": word_json(relator), "generator": generator,
        }),
        Witness::AdjointInfiniteOrder { slp, element } => json!({"slp": slp_json(slp), "element": element}),
    };
    tagged(w.kind(), body)
}

/// `f` is the field of the group the witness refers to.
pub fn parse_witness(at: &At, f: &Field) -> Parsed<Witness> {
    let kind = at.key("kind")?;
    let k = |name: &str| at.key(name);
    Ok(match kind.str()? {
        "jordan_commutator" => Witness::JordanCommutator {
            pairs: parse_pairs(&k("pairs")?, f)?,
            u: k("u")?.usize()?,
            s: k("s")?.usize()?,
        },
        "non_unipotent_flag" => Witness::NonUnipotentFlag {
            pairs: parse_pairs(&k("pairs")?, f)?,
            w: parse_subspace(&k("w")?, f)?,
        },
        "long_commutator" => Witness::LongCommutator {
            domain: parse_domain(&k("domain")?, f)?,
            slp: parse_slp(&k("slp")?)?,
            start: k("start")?.usize()?,
            multipliers: usizes(&k("multipliers")?)?,
            bound: k("bound")?.usize()?,
        },
        "non_commuting_prime_parts" => Witness::NonCommutingPrimeParts {
            domain: parse_domain(&k("domain")?, f)?,
            slp: parse_slp(&k("slp")?)?,
            x: k("x")?.usize()?,
            y: k("y")?.usize()?,
        },
        "non_prime_power_element" => Witness::NonPrimePowerElement {
            domain: parse_domain(&k("domain")?, f)?,
            slp: parse_slp(&k("slp")?)?,
            component: usizes(&k("component")?)?,
            word: parse_word(&k("word")?)?,
            prime: k("prime")?.u64()?,
        },
        "kernel_not_central" => Witness::KernelNotCentral {
            pairs: parse_pairs(&k("pairs")?, f)?,
            congruence: parse_congruence(&k("congruence")?)?,
            relator: parse_word(&k("relator")?)?,
            generator: k("generator")?.usize()?,
        },
        "adjoint_infinite_order" => Witness::AdjointInfiniteOrder {
            slp: parse_slp(&k("slp")?)?,
            element: k("element")?.usize()?,
        },
        other => return kind.fail(format!("unknown witness kind `{other}`")),
    })
}

pub fn infinite_witness_json(w: &InfiniteWitness) -> Value {
    let body = match w {
        InfiniteWitness::UnipotentPart { pairs, generator } => {
            json!({"pairs": pairs_json(pairs), "generator": generator})
        }
        InfiniteWitness::KernelNontrivial { pairs, congruence, relator } => json!({
            "pairs": pairs_json(pairs), "congruence": congruence_json(congruence), "relator": word_json(relator),
        }),
        InfiniteWitness::InfiniteOrder { slp, element } => json!({"slp": slp_json(slp), "element": element}),
    };
    tagged(w.kind(), body)
}

pub fn parse_infinite_witness(at: &At, f: &Field) -> Parsed<InfiniteWitness> {
    let kind = at.key("kind")?;
    Ok(match kind.str()? {
        "unipotent_part" => InfiniteWitness::UnipotentPart {
            pairs: parse_pairs(&at.key("pairs")?, f)?,
            generator: at.key("generator")?.usize()?,
        },
        "kernel_nontrivial" => InfiniteWitness::KernelNontrivial {
            pairs: parse_pairs(&at.key("pairs")?, f)?,
            congruence: parse_congruence(&at.key("congruence")?)?,
            relator: parse_word(&at.key("relator")?)?,
        },
        "infinite_order" => InfiniteWitness::InfiniteOrder {
            slp: parse_slp(&at.key("slp")?)?,
            element: at.key("element")?.usize()?,
        },
        other => return kind.fail(format!("unknown infinite-order witness `{other}`")),
    })
}
