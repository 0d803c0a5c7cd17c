//! Exact rationals and their `p/q` string encoding.

use num_rational::Ratio;
use serde::{de, Deserialize, Deserializer, Serializer};

pub type Rational = Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// Renders `p/q`, or just `p` for integers.
pub fn render(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<i64>().ok().map(int),
    }
}

/// Serde adapter: a single rational as a `p/q` string.
pub mod as_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| de::Error::custom(format!("not a rational: {s}")))
    }
}

/// Serde adapter: an optional rational as a `p/q` string or null.
pub mod opt_as_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&render(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        match s {
            None => Ok(None),
            Some(s) => parse(&s)
                .map(Some)
                .ok_or_else(|| de::Error::custom(format!("not a rational: {s}"))),
        }
    }
}

/// Serde adapter: a list of rationals as `p/q` strings.
pub mod vec_as_str {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&render(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse(s).ok_or_else(|| de::Error::custom(format!("not a rational: {s}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        assert_eq!(render(&frac(6, 4)), "3/2");
        assert_eq!(render(&frac(-4, 2)), "-2");
        assert_eq!(parse("3/2"), Some(frac(3, 2)));
        assert_eq!(parse(" -7 "), Some(int(-7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }
}
