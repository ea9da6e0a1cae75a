use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::Monomial;
use super::polynomial::Polynomial;

#[derive(Serialize, Deserialize)]
struct TermRepr {
    x: Vec<u32>,
    q: Vec<u32>,
    y: Vec<u32>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            terms: self
                .terms()
                .map(|(m, c)| TermRepr { x: m.x_exps().to_vec(), q: m.q_exps().to_vec(), y: m.y_exps().to_vec(), c: c.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c: BigInt = t.c.parse().map_err(|_| serde::de::Error::custom(format!("bad coefficient {:?}", t.c)))?;
            terms.push((Monomial::from_exps(&t.x, &t.q, &t.y), c));
        }
        Ok(Polynomial::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_form() {
        let g: Polynomial = "(1-q1)*x1 + q1".parse().unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"x":[1],"q":[],"y":[],"c":"1"},{"x":[],"q":[1],"y":[],"c":"1"},{"x":[1],"q":[1],"y":[],"c":"-1"}]}"#
        );
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_accepts_untrimmed_and_rejects_bad_coefficients() {
        let p: Polynomial = serde_json::from_str(r#"{"terms":[{"x":[0,1,0],"q":[0],"y":[],"c":"123456789012345678901234567890"}]}"#).unwrap();
        assert_eq!(p.terms().next().unwrap().0.x_exps(), &[0, 1]);
        assert!(serde_json::from_str::<Polynomial>(r#"{"terms":[{"x":[],"q":[],"y":[],"c":"1.5"}]}"#).is_err());
    }
}
