//! Parsers for count vectors, points and itinerary specifications.

use infimax_core::minimax::CountVector;
use infimax_core::{Itinerary, ItinerarySpec, RationalPoint};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::CliError;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
}

fn parse_uint(t: &str) -> Result<BigUint, CliError> {
    t.parse::<BigUint>()
        .map_err(|_| bad(format!("not a non-negative integer: {t:?}")))
}

pub fn parse_uints(s: &str) -> Result<Vec<BigUint>, CliError> {
    let v: Vec<BigUint> = split_list(s).map(parse_uint).collect::<Result<_, _>>()?;
    if v.is_empty() {
        return Err(bad("empty list"));
    }
    Ok(v)
}

fn check_k(k: Option<usize>, found: usize) -> Result<(), CliError> {
    match k {
        Some(k) if k != found => Err(bad(format!("expected {k} entries, found {found}"))),
        _ => Ok(()),
    }
}

/// `24,3,14`: letter counts with a positive last entry.
pub fn parse_counts(s: &str, k: Option<usize>) -> Result<CountVector, CliError> {
    let v = parse_uints(s)?;
    check_k(k, v.len())?;
    Ok(CountVector::new(v)?)
}

fn parse_rational(t: &str) -> Result<BigRational, CliError> {
    let err = || bad(format!("not a non-negative rational: {t:?}"));
    let q = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d == BigInt::from(0) {
                return Err(err());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| err())?),
    };
    if q < BigRational::from_integer(BigInt::from(0)) {
        return Err(err());
    }
    Ok(q)
}

/// `2/9,3/9,1/9,3/9` or integer weights `2,3,1,3`; the result is normalized.
pub fn parse_point(s: &str, k: Option<usize>) -> Result<RationalPoint, CliError> {
    let v: Vec<BigRational> = split_list(s)
        .map(parse_rational)
        .collect::<Result<_, _>>()?;
    check_k(k, v.len())?;
    Ok(RationalPoint::from_weights(v)?)
}

/// Itinerary specifications:
///
/// * `list:1,0,10,3`: the entries, then zeros forever
/// * `periodic:2,3`: the block repeated forever
/// * `prefix:1,2,3`: a finite prefix with nothing asserted beyond it
/// * `growth:min,n0=1`: the least sequence with `n_r = 2^{r+2} ∏ (n_i + 2)`;
///   `r=5` keeps only `n_0..=n_5`
/// * `poly:c,e`: `n_r = c (r+1)^e`
pub fn parse_spec(s: &str) -> Result<ItinerarySpec, CliError> {
    let (kind, body) = s
        .split_once(':')
        .ok_or_else(|| bad(format!("itinerary spec needs a kind prefix: {s:?}")))?;
    match kind.trim() {
        "list" => Ok(ItinerarySpec::Terminating(parse_uints(body)?)),
        "periodic" => Ok(ItinerarySpec::Periodic(parse_uints(body)?)),
        "prefix" => Ok(ItinerarySpec::Prefix(parse_uints(body)?)),
        "growth" => parse_growth(body),
        "poly" => {
            let v = parse_uints(body)?;
            let [c, e] = v.as_slice() else {
                return Err(bad("poly takes a coefficient and an exponent"));
            };
            let exponent = u32::try_from(e).map_err(|_| bad("exponent too large"))?;
            Ok(ItinerarySpec::Polynomial {
                coefficient: c.clone(),
                exponent,
            })
        }
        other => Err(bad(format!("unknown itinerary kind {other:?}"))),
    }
}

fn parse_growth(body: &str) -> Result<ItinerarySpec, CliError> {
    let mut n0 = BigUint::from(1u32);
    let mut depth: Option<usize> = None;
    for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('=') {
            Some(("n0", v)) => n0 = parse_uint(v)?,
            Some(("r", v)) => {
                depth = Some(v.parse().map_err(|_| bad(format!("bad depth {v:?}")))?);
            }
            None if part == "min" => {}
            _ => return Err(bad(format!("unknown growth option {part:?}"))),
        }
    }
    let spec = ItinerarySpec::ExceptionalGrowth { n0 };
    Ok(match depth {
        Some(r) => ItinerarySpec::Prefix(spec.take(r + 1)),
        None => spec,
    })
}

/// Itinerary text as printed by the `itinerary` command (`0 3 1 2 | 0̄`),
/// a bare list, or `list:...`.
pub fn parse_finite_itinerary(s: &str) -> Result<Itinerary, CliError> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix("list:") {
        return Ok(Itinerary::terminated(parse_uints(body)?));
    }
    let (head, tail) = match s.split_once('|') {
        Some((h, t)) => (h, Some(t.trim())),
        None => (s, None),
    };
    match tail {
        None | Some("0̄") | Some("0") | Some("0...") => {}
        Some(t) => {
            return Err(bad(format!(
                "only itineraries ending in zeros name a point, got tail {t:?}"
            )))
        }
    }
    let entries = if head.trim().is_empty() {
        Vec::new()
    } else {
        parse_uints(head)?
    };
    Ok(Itinerary::terminated(entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn counts() {
        assert_eq!(
            parse_counts("24,3,14", Some(3)).unwrap().to_string(),
            "24,3,14"
        );
        assert!(parse_counts("24,3,0", None).is_err());
        assert!(parse_counts("24,3", Some(3)).is_err());
        assert!(parse_counts("a,1", None).is_err());
    }

    #[test]
    fn points() {
        let p = parse_point("2/9,3/9,1/9,3/9", Some(4)).unwrap();
        assert_eq!(p.to_string(), "2/9,1/3,1/9,1/3");
        assert_eq!(parse_point("2,3,1,3", None).unwrap(), p);
        assert!(parse_point("1/0,1", None).is_err());
        assert!(parse_point("-1,2", None).is_err());
    }

    #[test]
    fn specs() {
        assert_eq!(
            parse_spec("list:1,0,10,3").unwrap(),
            ItinerarySpec::Terminating(big(&[1, 0, 10, 3]))
        );
        assert_eq!(
            parse_spec("periodic:1").unwrap(),
            ItinerarySpec::Periodic(big(&[1]))
        );
        assert_eq!(
            parse_spec("growth:min,n0=1,r=2").unwrap(),
            ItinerarySpec::Prefix(big(&[1, 24, 1248]))
        );
        assert_eq!(
            parse_spec("growth:n0=2").unwrap(),
            ItinerarySpec::ExceptionalGrowth {
                n0: BigUint::from(2u32)
            }
        );
        assert_eq!(
            parse_spec("poly:1,2").unwrap(),
            ItinerarySpec::Polynomial {
                coefficient: BigUint::from(1u32),
                exponent: 2
            }
        );
        assert!(parse_spec("1,2").is_err());
        assert!(parse_spec("cubic:1").is_err());
        assert!(parse_spec("poly:1").is_err());
    }

    #[test]
    fn finite_itineraries() {
        let it = parse_finite_itinerary("0 3 1 2 | 0̄").unwrap();
        assert_eq!(it, Itinerary::terminated(big(&[0, 3, 1, 2])));
        assert_eq!(parse_finite_itinerary("0,3,1,2").unwrap(), it);
        assert_eq!(parse_finite_itinerary("list:0,3,1,2").unwrap(), it);
        assert_eq!(
            parse_finite_itinerary("| 0̄").unwrap(),
            Itinerary::terminated(Vec::new())
        );
        assert!(parse_finite_itinerary("1 2 | ...").is_err());
    }
}
