//! Command-line syntax for relation families, point pairs, and sampling
//! strategies.

use rational_rep::{PointPair, RationalTuple, SamplingStrategy, SignedPoint, SymbolicRelation};

/// "OddR:2", "EvenT:-1", "DeltaLift:1".
pub fn family_spec(s: &str, n: usize) -> Result<SymbolicRelation, String> {
    let (kind, idx) = s
        .split_once(':')
        .ok_or_else(|| format!("expected KIND:INDEX, got {s:?}"))?;
    let index: i64 = idx
        .parse()
        .map_err(|_| format!("family index {idx:?} is not an integer"))?;
    match kind {
        "OddR" => SymbolicRelation::odd_r(n, index),
        "EvenT" => SymbolicRelation::even_t(n, index),
        "DeltaLift" => SymbolicRelation::delta_lift(n, index),
        other => {
            return Err(format!(
                "unknown family {other:?}, expected OddR, EvenT, or DeltaLift"
            ))
        }
    }
    .map_err(|e| e.to_string())
}

/// "mixture", "independent", "identical", or "shared-prefix:K".
pub fn sampling_mix(s: &str) -> Result<SamplingStrategy, String> {
    match s {
        "mixture" => Ok(SamplingStrategy::Mixture),
        "independent" => Ok(SamplingStrategy::Independent),
        "identical" => Ok(SamplingStrategy::Identical),
        other => other
            .strip_prefix("shared-prefix:")
            .and_then(|k| k.parse::<usize>().ok())
            .map(SamplingStrategy::SharedPrefix)
            .ok_or_else(|| {
                format!(
                    "unknown mix {other:?}, expected mixture, independent, identical, or shared-prefix:K"
                )
            }),
    }
}

/// Two points separated by the comma after the first closing parenthesis:
/// "(0,1/2)+ , (1,0)-" signed, "(0,1/2) , (1,0)" plain.
pub fn point_pair(s: &str, signed: bool) -> Result<PointPair, String> {
    let (first, second) = split_pair(s)?;
    if signed {
        let x: SignedPoint = first.parse().map_err(|e| format!("{e}"))?;
        let y: SignedPoint = second.parse().map_err(|e| format!("{e}"))?;
        Ok(PointPair::Signed(x, y))
    } else {
        let p: RationalTuple = first.parse().map_err(|e| format!("{e}"))?;
        let q: RationalTuple = second.parse().map_err(|e| format!("{e}"))?;
        Ok(PointPair::Plain(p, q))
    }
}

fn split_pair(s: &str) -> Result<(&str, &str), String> {
    let close = s
        .find(')')
        .ok_or_else(|| format!("no closing parenthesis in {s:?}"))?;
    let rest = &s[close + 1..];
    let comma = rest
        .find(',')
        .ok_or_else(|| format!("missing pair separator in {s:?}"))?;
    let at = close + 1 + comma;
    Ok((s[..at].trim(), s[at + 1..].trim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rational_rep::member;

    #[test]
    fn pair_syntax_round_trips() {
        let pair = point_pair("(0,1/2)+ , (1,0)-", true).unwrap();
        assert_eq!(pair.to_string(), "((0, 1/2)+, (1, 0)-)");
        let pair = point_pair("(3) , (7/2)", false).unwrap();
        assert_eq!(pair.to_string(), "((3), (7/2))");
        assert!(point_pair("(1,2)+", true).is_err());
        assert!(point_pair("1,2", true).is_err());
    }

    #[test]
    fn family_specs_resolve_and_validate() {
        let rel = family_spec("OddR:2", 1).unwrap();
        let pair = point_pair("(0)+ , (0)-", true).unwrap();
        assert!(member(&rel, &pair));
        assert!(family_spec("EvenT:0", 1).is_err());
        assert!(family_spec("OddR:9", 1).is_err());
        assert!(family_spec("Odd", 1).is_err());
        assert!(family_spec("Foo:1", 1).is_err());
    }

    #[test]
    fn mixes_parse() {
        assert_eq!(sampling_mix("identical").unwrap(), SamplingStrategy::Identical);
        assert_eq!(
            sampling_mix("shared-prefix:2").unwrap(),
            SamplingStrategy::SharedPrefix(2)
        );
        assert!(sampling_mix("uniform").is_err());
        assert!(sampling_mix("shared-prefix:x").is_err());
    }
}
