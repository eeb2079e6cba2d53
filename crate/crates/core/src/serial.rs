//! JSON file formats for algebra elements, cochains and chains.
//!
//! Words and tuples are written 1-based, rationals as `"num/den"`. Objects
//! are `serde_json::Value`s, whose maps keep keys sorted, so equal values
//! always print identically.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::koszul_calculus::{Chain, Cochain};
use crate::nsym_algebra::{AlgebraElement, NSymAlgebra};
use crate::ratlin::{format_scalar, parse_scalar};
use crate::tensorspace::{IncreasingTuple, TensorElement, Word};

/// Grammar of the file formats, printed by `--schema`.
pub const SCHEMA: &str = r#"rational  := string "num/den"       denominator > 0, no whitespace ("a" accepted on input)
index     := integer 1..n
word      := [index, ...]                 letters of a monomial, left to right
tuple     := [index, ...]                 strictly increasing
term      := {"coeff": rational, "word": word}
part      := {"degree": integer, "terms": [term, ...]}
element   := [part, ...]                  normal monomials, degrees ascending
cochain   := {"N": integer, "n": integer, "p": integer,
              "entries": [{"tuple": tuple, "value": element}, ...]}
                                          tuple length ν(p); absent tuples map to 0
chain     := {"N": integer, "n": integer, "q": integer,
              "terms": [{"tuple": tuple, "value": element}, ...]}
                                          tuple length ν(q)

Input words need not be normal monomials: they are reduced to normal form,
and repeated tuples are summed. Output is canonical: keys sorted, terms in
word order, zero entries dropped."#;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field `{key}`")))
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("field `{key}` must be a non-negative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn indices(v: &Value, what: &str) -> Result<Vec<usize>> {
    array(v, what)?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(format!("{what} entries must be integers"))))
        .collect()
}

pub fn algebra_to_json(a: &AlgebraElement) -> Value {
    let ctx = a.context();
    let parts: Vec<Value> = a
        .parts()
        .map(|(m, v)| {
            let words = ctx.normal_words(m);
            let terms: Vec<Value> =
                v.iter().map(|(k, c)| json!({"word": words[k].to_one_based(), "coeff": format_scalar(c)})).collect();
            json!({"degree": m, "terms": terms})
        })
        .collect();
    Value::Array(parts)
}

pub fn algebra_from_json(ctx: &Arc<NSymAlgebra>, v: &Value) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(ctx);
    for part in array(v, "element")? {
        let degree = usize_field(part, "degree")?;
        let mut t = TensorElement::zero(ctx.n(), degree);
        for term in array(field(part, "terms")?, "terms")? {
            let word = Word::from_one_based(&indices(field(term, "word")?, "word")?, ctx.n())?;
            if word.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: word.len() });
            }
            let coeff = field(term, "coeff")?.as_str().ok_or_else(|| parse_err("`coeff` must be a string"))?;
            t.add_term(word, &parse_scalar(coeff)?);
        }
        out.add_assign(&AlgebraElement::normal_form(ctx, &t));
    }
    Ok(out)
}

/// `(n, N)` declared by a cochain or chain object.
pub fn declared_context(v: &Value) -> Result<(usize, usize)> {
    Ok((usize_field(v, "n")?, usize_field(v, "N")?))
}

fn check_declared(ctx: &NSymAlgebra, v: &Value) -> Result<()> {
    let (n, big_n) = declared_context(v)?;
    if (n, big_n) != (ctx.n(), ctx.big_n()) {
        return Err(Error::ContextMismatch {
            left_n: ctx.n(),
            left_big_n: ctx.big_n(),
            right_n: n,
            right_big_n: big_n,
        });
    }
    Ok(())
}

fn entries_to_json<'a, I>(items: I) -> Vec<Value>
where
    I: Iterator<Item = (&'a IncreasingTuple, &'a AlgebraElement)>,
{
    items.map(|(t, a)| json!({"tuple": t.to_one_based(), "value": algebra_to_json(a)})).collect()
}

fn entries_from_json(ctx: &Arc<NSymAlgebra>, v: &Value, what: &str) -> Result<Vec<(IncreasingTuple, AlgebraElement)>> {
    array(v, what)?
        .iter()
        .map(|e| {
            let tuple = IncreasingTuple::from_one_based(&indices(field(e, "tuple")?, "tuple")?, ctx.n())?;
            Ok((tuple, algebra_from_json(ctx, field(e, "value")?)?))
        })
        .collect()
}

pub fn cochain_to_json(f: &Cochain) -> Value {
    let ctx = f.context();
    json!({"n": ctx.n(), "N": ctx.big_n(), "p": f.degree(), "entries": entries_to_json(f.entries())})
}

pub fn cochain_from_json(ctx: &Arc<NSymAlgebra>, v: &Value) -> Result<Cochain> {
    check_declared(ctx, v)?;
    let p = usize_field(v, "p")?;
    let mut f = Cochain::zero(ctx, p);
    for (t, a) in entries_from_json(ctx, field(v, "entries")?, "entries")? {
        let mut sum = f.value(&t);
        sum.add_assign(&a);
        f.set(t, sum)?;
    }
    Ok(f)
}

pub fn chain_to_json(z: &Chain) -> Value {
    let ctx = z.context();
    json!({"n": ctx.n(), "N": ctx.big_n(), "q": z.degree(), "terms": entries_to_json(z.terms())})
}

pub fn chain_from_json(ctx: &Arc<NSymAlgebra>, v: &Value) -> Result<Chain> {
    check_declared(ctx, v)?;
    let q = usize_field(v, "q")?;
    let mut z = Chain::zero(ctx, q);
    for (t, a) in entries_from_json(ctx, field(v, "terms")?, "terms")? {
        z.add_term(a, t)?;
    }
    Ok(z)
}

/// Either operand kind, told apart by the `p` / `q` field.
#[derive(Clone, Debug)]
pub enum Operand {
    Cochain(Cochain),
    Chain(Chain),
}

pub fn operand_from_json(ctx: &Arc<NSymAlgebra>, v: &Value) -> Result<Operand> {
    match (v.get("p"), v.get("q")) {
        (Some(_), None) => cochain_from_json(ctx, v).map(Operand::Cochain),
        (None, Some(_)) => chain_from_json(ctx, v).map(Operand::Chain),
        _ => Err(parse_err("expected exactly one of the fields `p` (cochain) or `q` (chain)")),
    }
}

pub fn operand_to_json(x: &Operand) -> Value {
    match x {
        Operand::Cochain(f) => cochain_to_json(f),
        Operand::Chain(z) => chain_to_json(z),
    }
}

pub fn parse_str(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))
}

/// Pretty-printed text with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{frac, int};

    fn ctx() -> Arc<NSymAlgebra> {
        NSymAlgebra::new(3, 3).unwrap()
    }

    #[test]
    fn element_format() {
        let ctx = ctx();
        let mut a = AlgebraElement::from_word(&ctx, &Word::new(vec![1, 0]));
        a.add_scaled(&AlgebraElement::one(&ctx), &frac(-1, 2));
        let v = algebra_to_json(&a);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"[{"degree":0,"terms":[{"coeff":"-1/2","word":[]}]},{"degree":2,"terms":[{"coeff":"1/1","word":[2,1]}]}]"#
        );
        assert_eq!(algebra_from_json(&ctx, &v).unwrap(), a);
    }

    #[test]
    fn input_words_are_normalized() {
        let ctx = NSymAlgebra::new(2, 2).unwrap();
        let v =
            parse_str(r#"[{"degree":2,"terms":[{"coeff":"1","word":[2,1]},{"coeff":"-1","word":[1,2]}]}]"#).unwrap();
        assert!(algebra_from_json(&ctx, &v).unwrap().is_zero());
    }

    #[test]
    fn cochain_round_trip() {
        let ctx = ctx();
        let f = Cochain::random(&ctx, 1, 2, 3).unwrap();
        let text = to_text(&cochain_to_json(&f));
        let back = cochain_from_json(&ctx, &parse_str(&text).unwrap()).unwrap();
        assert_eq!(back, f);
        assert_eq!(to_text(&cochain_to_json(&back)), text);
        assert!(text.starts_with("{\n  \"N\": 3,\n  \"entries\""));
    }

    #[test]
    fn chain_round_trip_sums_repeats() {
        let ctx = ctx();
        let text = r#"{"n":3,"N":3,"q":1,"terms":[
            {"tuple":[2],"value":[{"degree":0,"terms":[{"coeff":"1/3","word":[]}]}]},
            {"tuple":[2],"value":[{"degree":0,"terms":[{"coeff":"2/3","word":[]}]}]}]}"#;
        let z = chain_from_json(&ctx, &parse_str(text).unwrap()).unwrap();
        let t = IncreasingTuple::from_one_based(&[2], 3).unwrap();
        assert_eq!(z.coefficient(&t), AlgebraElement::scalar(&ctx, int(1)));
        assert_eq!(chain_from_json(&ctx, &chain_to_json(&z)).unwrap(), z);
    }

    #[test]
    fn distinct_diagnostics() {
        let ctx = ctx();
        let wrong_ctx = parse_str(r#"{"n":4,"N":3,"p":0,"entries":[]}"#).unwrap();
        assert!(matches!(cochain_from_json(&ctx, &wrong_ctx), Err(Error::ContextMismatch { .. })));
        let wrong_len = parse_str(r#"{"n":3,"N":3,"p":1,"entries":[{"tuple":[1,2],"value":[]}]}"#).unwrap();
        assert!(matches!(cochain_from_json(&ctx, &wrong_len), Err(Error::DegreeMismatch { .. })));
        let bad_letter = parse_str(r#"{"n":3,"N":3,"p":1,"entries":[{"tuple":[4],"value":[]}]}"#).unwrap();
        assert!(matches!(cochain_from_json(&ctx, &bad_letter), Err(Error::LetterOutOfRange { .. })));
        let unsorted = parse_str(r#"{"n":3,"N":3,"p":2,"entries":[{"tuple":[3,2,1],"value":[]}]}"#).unwrap();
        assert!(cochain_from_json(&ctx, &unsorted).is_err());
        assert!(matches!(parse_str("{"), Err(Error::Parse(_))));
        let zero_den = parse_str(r#"[{"degree":0,"terms":[{"coeff":"1/0","word":[]}]}]"#).unwrap();
        assert!(algebra_from_json(&ctx, &zero_den).is_err());
        let ambiguous = parse_str(r#"{"n":3,"N":3,"p":1,"q":1,"entries":[]}"#).unwrap();
        assert!(operand_from_json(&ctx, &ambiguous).is_err());
    }
}
