//! Named families and identities, loaded from structured text.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::datum::{parse_rational, NahmDatum};
use crate::error::{Error, Result};
use crate::precision::Rational;
use crate::qseries::{ConditionKind, ProductSpec};

const BUILTIN: &str = include_str!("../corpus/builtin.toml");

/// A quadratic form `A` with its Pochhammer bases `J`; the linear term and
/// constant vary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    pub a: Vec<Vec<Rational>>,
    pub j: Vec<u32>,
}

impl Family {
    pub fn k(&self) -> usize {
        self.j.len()
    }

    /// The datum with linear term `b` and constant `c`, unrestricted support.
    pub fn datum(&self, b: Vec<Rational>, c: Rational) -> Result<NahmDatum> {
        NahmDatum::new(self.a.clone(), b, c, self.j.clone(), vec![0; self.k()])
    }
}

/// Sum sides (each a termwise sum of Nahm-type sums) asserted equal to a product.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub description: String,
    pub condition: Option<ConditionKind>,
    pub sides: Vec<Vec<NahmDatum>>,
    pub product: ProductSpec,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    families: BTreeMap<String, Family>,
    identities: Vec<Identity>,
}

#[derive(Deserialize)]
struct RawCorpus {
    #[serde(default)]
    families: BTreeMap<String, RawFamily>,
    #[serde(default)]
    identity: Vec<RawIdentity>,
}

#[derive(Deserialize)]
struct RawFamily {
    a: Vec<Vec<String>>,
    j: Vec<u32>,
}

#[derive(Deserialize)]
struct RawIdentity {
    name: String,
    #[serde(default)]
    description: String,
    condition: Option<String>,
    product: ProductSpec,
    sides: Vec<Vec<RawTerm>>,
}

#[derive(Deserialize)]
struct RawTerm {
    family: Option<String>,
    a: Option<Vec<Vec<String>>>,
    j: Option<Vec<u32>>,
    b: Vec<String>,
    #[serde(default)]
    c: Option<String>,
    lower: Option<Vec<u32>>,
}

fn parse_matrix(a: &[Vec<String>]) -> Result<Vec<Vec<Rational>>> {
    a.iter()
        .map(|row| row.iter().map(|s| parse_rational(s)).collect())
        .collect()
}

impl Corpus {
    /// The corpus compiled into the library.
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN).expect("built-in corpus is well formed")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawCorpus = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut families = BTreeMap::new();
        for (name, f) in raw.families {
            let fam = Family { name: name.clone(), a: parse_matrix(&f.a)?, j: f.j };
            // validates shape and definiteness
            fam.datum(vec![Rational::default(); fam.k()], Rational::default())?;
            families.insert(name, fam);
        }
        let mut identities = Vec::new();
        for id in raw.identity {
            let condition = id.condition.as_deref().map(str::parse).transpose()?;
            id.product.validate()?;
            let mut sides = Vec::new();
            for side in &id.sides {
                let mut terms = Vec::new();
                for t in side {
                    terms.push(Self::term(&families, t, &id.name)?);
                }
                sides.push(terms);
            }
            identities.push(Identity {
                name: id.name,
                description: id.description,
                condition,
                sides,
                product: id.product,
            });
        }
        Ok(Self { families, identities })
    }

    fn term(families: &BTreeMap<String, Family>, t: &RawTerm, id: &str) -> Result<NahmDatum> {
        let (a, j) = match (&t.family, &t.a, &t.j) {
            (Some(f), None, None) => {
                let fam = families.get(f).ok_or_else(|| Error::UnknownEntry(f.clone()))?;
                (fam.a.clone(), fam.j.clone())
            }
            (None, Some(a), Some(j)) => (parse_matrix(a)?, j.clone()),
            _ => {
                return Err(Error::InvalidDatum(format!(
                    "identity `{id}`: a term needs either `family` or both `a` and `j`"
                )))
            }
        };
        let b = t.b.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let c = t.c.as_deref().map(parse_rational).transpose()?.unwrap_or_default();
        let lower = t.lower.clone().unwrap_or_else(|| vec![0; j.len()]);
        NahmDatum::new(a, b, c, j, lower)
    }

    pub fn family(&self, name: &str) -> Result<&Family> {
        self.families.get(name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
    }

    pub fn families(&self) -> impl Iterator<Item = &Family> {
        self.families.values()
    }

    pub fn identity(&self, name: &str) -> Result<&Identity> {
        self.identities
            .iter()
            .find(|i| i.name == name)
            .ok_or_else(|| Error::UnknownEntry(name.to_string()))
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads() {
        let c = Corpus::builtin();
        let names: Vec<_> = c.identities().iter().map(|i| i.name.as_str()).collect();
        assert_eq!(names, ["cap1", "cap1alt", "cap2", "kr-1", "kr-2", "kr-3", "kr-4", "kr-5"]);
        assert_eq!(c.family("mod9").unwrap().j, vec![1, 3]);
        let kr5 = c.identity("kr-5").unwrap();
        assert_eq!(kr5.sides[0].len(), 3);
        assert_eq!(kr5.sides[0][0].lower(), &[0, 1]);
        assert!(c.identity("kr-9").is_err());
    }

    #[test]
    fn rejects_dangling_family() {
        let text = r#"
            [[identity]]
            name = "x"
            product = { modulus = 2, denominator = [[1, 1]] }
            sides = [[{ family = "nope", b = ["0"] }]]
        "#;
        assert!(matches!(Corpus::from_toml(text), Err(Error::UnknownEntry(_))));
    }
}
