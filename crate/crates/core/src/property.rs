use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Order-theoretic properties decided by the checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// Every downward directed subset has a greatest lower bound.
    Glb,
    /// Every chain has a greatest lower bound.
    Glbc,
    /// Directed compatibility, quantified over the retained elements.
    Dc,
    /// Directed discreteness.
    Dd,
    /// Every nontrivial interval contains a covering pair.
    Kap,
    /// Descending chain condition.
    Dcc,
    /// Directed compatibility quantified over every element strictly above the glb.
    StrongDc,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Glb,
        Property::Glbc,
        Property::Dc,
        Property::Dd,
        Property::Kap,
        Property::Dcc,
        Property::StrongDc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Glb => "glb",
            Property::Glbc => "glbc",
            Property::Dc => "dc",
            Property::Dd => "dd",
            Property::Kap => "kap",
            Property::Dcc => "dcc",
            Property::StrongDc => "strong_dc",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let norm = s.trim().to_ascii_lowercase().replace(['-', '+'], "_");
        Property::ALL
            .into_iter()
            .find(|p| p.name() == norm || (norm == "dc_plus" && *p == Property::StrongDc))
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// Parses a comma separated property list; `all` selects every property.
pub fn parse_list(s: &str) -> Result<Vec<Property>, Error> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Property::ALL.to_vec());
    }
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("DC".parse::<Property>().unwrap(), Property::Dc);
        assert_eq!("strong-dc".parse::<Property>().unwrap(), Property::StrongDc);
        assert_eq!(
            parse_list("glb,kap").unwrap(),
            vec![Property::Glb, Property::Kap]
        );
        assert_eq!(parse_list("all").unwrap().len(), 7);
        assert!("foo".parse::<Property>().is_err());
    }
}
