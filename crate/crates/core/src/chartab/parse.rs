use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Character, CharacterTable, ChartabError, ClassInfo};
use crate::modular::{is_prime_u64, prime_factors_u64};

fn malformed(line: usize, message: impl Into<String>) -> ChartabError {
    ChartabError::Malformed { line, message: message.into() }
}

fn inconsistent(line: usize, message: impl Into<String>) -> ChartabError {
    ChartabError::Inconsistent { line, message: message.into() }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ChartabError> {
    let tok = tok.ok_or_else(|| malformed(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| malformed(line, format!("bad {what} `{tok}`")))
}

/// Parses and validates a character table. Every arithmetic invariant is
/// checked; violations are reported with the offending line.
pub fn parse_table(text: &str) -> Result<CharacterTable, ChartabError> {
    let mut name = None;
    let mut order = BigUint::zero();
    let mut group_line = 0;
    let mut classes: Vec<(usize, ClassInfo)> = Vec::new();
    let mut powers: Vec<(usize, u64, String, String)> = Vec::new();
    let mut chars: Vec<(usize, String, i64, Vec<i64>)> = Vec::new();
    let mut aliases: Vec<(usize, String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let kw = it.next().unwrap();
        if kw != "group" && name.is_none() {
            return Err(malformed(no, "the first directive must be `group`"));
        }
        match kw {
            "group" => {
                if name.is_some() {
                    return Err(malformed(no, "duplicate `group` line"));
                }
                name = Some(field::<String>(it.next(), no, "group name")?);
                order = field(it.next(), no, "group order")?;
                if order.is_zero() {
                    return Err(malformed(no, "group order must be positive"));
                }
                group_line = no;
            }
            "class" => {
                let cname: String = field(it.next(), no, "class name")?;
                let element_order: u64 = field(it.next(), no, "element order")?;
                let size: BigUint = field(it.next(), no, "class size")?;
                let fused: u32 = match it.next() {
                    Some(t) => field(Some(t), no, "fused count")?,
                    None => 1,
                };
                if element_order == 0 || size.is_zero() || fused == 0 {
                    return Err(malformed(no, "element order, size and fused count must be positive"));
                }
                if classes.iter().any(|(_, c)| c.name == cname) {
                    return Err(malformed(no, format!("duplicate class `{cname}`")));
                }
                classes.push((no, ClassInfo { name: cname, element_order, size, fused }));
            }
            "power" => {
                let p: u64 = field(it.next(), no, "prime")?;
                if !is_prime_u64(p) {
                    return Err(malformed(no, format!("{p} is not prime")));
                }
                let from: String = field(it.next(), no, "class")?;
                let to: String = field(it.next(), no, "class")?;
                powers.push((no, p, from, to));
            }
            "char" => {
                let cname: String = field(it.next(), no, "character name")?;
                let degree: i64 = field(it.next(), no, "degree")?;
                let values = it
                    .map(|t| {
                        t.parse::<i64>().map_err(|_| {
                            malformed(no, format!("character value `{t}` is not an integer; irrational values are not supported"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                chars.push((no, cname, degree, values));
                continue;
            }
            "alias" => {
                let token: String = field(it.next(), no, "alias token")?;
                let target: String = field(it.next(), no, "class")?;
                aliases.push((no, token, target));
            }
            other => return Err(malformed(no, format!("unknown directive `{other}`"))),
        }
        if kw != "group" && kw != "char" {
            if let Some(extra) = line.split_whitespace().nth(match kw { "class" => 5, "power" => 4, _ => 3 }) {
                return Err(malformed(no, format!("unexpected trailing field `{extra}`")));
            }
        }
    }

    let name = name.ok_or_else(|| malformed(0, "missing `group` line"))?;
    if classes.is_empty() {
        return Err(malformed(group_line, "no classes"));
    }
    let class_of = |token: &str, line: usize| {
        classes.iter().position(|(_, c)| c.name == token).ok_or_else(|| malformed(line, format!("unknown class `{token}`")))
    };

    let (first_line, first) = &classes[0];
    if first.element_order != 1 || first.size != BigUint::from(1u32) || first.fused != 1 {
        return Err(inconsistent(*first_line, "the first class must be the identity (order 1, size 1)"));
    }
    let mut total = BigUint::zero();
    for (line, c) in &classes {
        let fused = BigUint::from(c.fused);
        if !(&c.size % &fused).is_zero() || !(&order % (&c.size / &fused)).is_zero() {
            return Err(inconsistent(*line, format!("class size {} does not divide the group order {order}", c.size)));
        }
        if !(&order % c.element_order).is_zero() {
            return Err(inconsistent(*line, format!("element order {} does not divide the group order", c.element_order)));
        }
        total += &c.size;
    }
    if total != order {
        return Err(inconsistent(group_line, format!("class sizes sum to {total}, not to the group order {order}")));
    }

    let mut power_maps = BTreeMap::new();
    for (line, p, from, to) in &powers {
        let a = class_of(from, *line)?;
        let b = class_of(to, *line)?;
        let oa = classes[a].1.element_order;
        let expected = oa / oa.gcd(p);
        if classes[b].1.element_order != expected {
            return Err(inconsistent(
                *line,
                format!("{p}-th power of an order-{oa} class must have order {expected}, `{to}` has order {}", classes[b].1.element_order),
            ));
        }
        if power_maps.insert((*p, a), b).is_some() {
            return Err(malformed(*line, format!("duplicate {p}-power map for `{from}`")));
        }
    }
    for (idx, (line, c)) in classes.iter().enumerate() {
        for p in prime_factors_u64(c.element_order) {
            if !power_maps.contains_key(&(p, idx)) {
                return Err(inconsistent(*line, format!("missing {p}-power map for class {}", c.name)));
            }
        }
    }

    let mut alias_map = BTreeMap::new();
    for (line, token, target) in &aliases {
        if classes.iter().any(|(_, c)| &c.name == token) {
            return Err(malformed(*line, format!("alias `{token}` shadows a class name")));
        }
        let idx = class_of(target, *line)?;
        if alias_map.insert(token.clone(), idx).is_some() {
            return Err(malformed(*line, format!("duplicate alias `{token}`")));
        }
    }

    let mut table = CharacterTable {
        name,
        order,
        classes: classes.into_iter().map(|(_, c)| c).collect(),
        power_maps,
        characters: Vec::new(),
        aliases: alias_map,
    };

    for (line, cname, degree, values) in chars {
        if values.len() != table.classes.len() {
            return Err(malformed(line, format!("{} values for {} classes", values.len(), table.classes.len())));
        }
        if degree < 1 || values[0] != degree {
            return Err(inconsistent(line, format!("value {} at the identity differs from the degree {degree}", values[0])));
        }
        if table.characters.iter().any(|c| c.name == cname) {
            return Err(malformed(line, format!("duplicate character `{cname}`")));
        }
        let norm = table.inner_product(&values, &values);
        let norm = match norm.is_integer().then(|| norm.to_integer().to_u64()).flatten() {
            Some(n) if n >= 1 => n,
            _ => return Err(inconsistent(line, format!("norm of {cname} is {norm}, not a positive integer"))),
        };
        table.characters.push(Character { name: cname, degree, values, norm });
        let chi = table.characters.len() - 1;
        for c in 0..table.classes.len() {
            table.fixed_dim(chi, c).map_err(|e| inconsistent(line, e.to_string()))?;
        }
    }
    Ok(table)
}
