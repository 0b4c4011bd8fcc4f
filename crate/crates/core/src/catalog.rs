//! Numeric invariants of the irreducible bounded symmetric domains.
//!
//! Every domain is reduced to its rank `r` and characteristic multiplicities
//! `(a, b)`. The complex dimension, the dimension of the maximal tube-type
//! subdomain and the genus are always derived from those three integers:
//!
//! ```text
//! n   = r + r(r-1)a/2 + rb
//! n_T = r + r(r-1)a/2
//! p   = (n + n_T)/r = 2 + (r-1)a + b
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Family designation of a domain, with its defining parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainSpec {
    /// `m × n` complex matrices with `ZZ* < I`, `1 ≤ m ≤ n`.
    TypeI { m: u32, n: u32 },
    /// Skew-symmetric `m × m` matrices, `m ≥ 2`.
    TypeII { m: u32 },
    /// Symmetric `n × n` matrices, `n ≥ 1`.
    TypeIII { n: u32 },
    /// Lie ball in `ℂⁿ`, `n ≥ 3`.
    TypeIV { n: u32 },
    /// 16-dimensional exceptional domain.
    TypeV,
    /// 27-dimensional exceptional domain.
    TypeVI,
    /// Arbitrary `(r, a, b)`; may not correspond to an actual domain.
    Custom { r: u32, a: u32, b: u32 },
}

impl DomainSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidDomain(msg));
        match *self {
            DomainSpec::TypeI { m, n } => {
                if m < 1 {
                    return fail(format!("type I requires m ≥ 1 (got m = {m})"));
                }
                if m > n {
                    return fail(format!("type I requires m ≤ n (got m = {m}, n = {n})"));
                }
            }
            DomainSpec::TypeII { m } if m < 2 => {
                return fail(format!("type II requires m ≥ 2 (got m = {m})"));
            }
            DomainSpec::TypeIII { n } if n < 1 => {
                return fail(format!("type III requires n ≥ 1 (got n = {n})"));
            }
            DomainSpec::TypeIV { n } if n < 3 => {
                return fail(format!("type IV requires n ≥ 3 (got n = {n})"));
            }
            DomainSpec::Custom { r, a, b: _ } => {
                if r < 1 {
                    return fail(format!("custom domain requires r ≥ 1 (got r = {r})"));
                }
                if a < 1 {
                    return fail(format!("custom domain requires a ≥ 1 (got a = {a})"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Rank and multiplicities `(r, a, b)`; rank-one domains report `a = 1`.
    fn rank_and_multiplicities(&self) -> (u32, u32, u32) {
        let (r, a, b) = match *self {
            DomainSpec::TypeI { m, n } => (m, 2, n - m),
            DomainSpec::TypeII { m } => (m / 2, 4, 2 * (m % 2)),
            DomainSpec::TypeIII { n } => (n, 1, 0),
            DomainSpec::TypeIV { n } => (2, n - 2, 0),
            DomainSpec::TypeV => (2, 6, 4),
            DomainSpec::TypeVI => (3, 8, 0),
            DomainSpec::Custom { r, a, b } => (r, a, b),
        };
        if r == 1 {
            (1, 1, b)
        } else {
            (r, a, b)
        }
    }

    /// Roman-numeral family label used in tables, `custom` for formal entries.
    pub fn family_label(&self) -> &'static str {
        match self {
            DomainSpec::TypeI { .. } => "I",
            DomainSpec::TypeII { .. } => "II",
            DomainSpec::TypeIII { .. } => "III",
            DomainSpec::TypeIV { .. } => "IV",
            DomainSpec::TypeV => "V",
            DomainSpec::TypeVI => "VI",
            DomainSpec::Custom { .. } => "custom",
        }
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainSpec::TypeI { m, n } => write!(f, "typeI:{m},{n}"),
            DomainSpec::TypeII { m } => write!(f, "typeII:{m}"),
            DomainSpec::TypeIII { n } => write!(f, "typeIII:{n}"),
            DomainSpec::TypeIV { n } => write!(f, "typeIV:{n}"),
            DomainSpec::TypeV => f.write_str("typeV"),
            DomainSpec::TypeVI => f.write_str("typeVI"),
            DomainSpec::Custom { r, a, b } => write!(f, "custom:{r},{a},{b}"),
        }
    }
}

/// Parses `typeI:m,n | typeII:m | typeIII:n | typeIV:n | typeV | typeVI |
/// custom:r,a,b`, case-insensitively and without whitespace. Family
/// constraints are checked as well.
impl FromStr for DomainSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let (head, args) = match lower.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (lower.as_str(), None),
        };
        let ints = |expected: usize| -> Result<Vec<u32>> {
            let args =
                args.ok_or_else(|| Error::InvalidDomain(format!("`{s}` needs {expected} integer parameter(s)")))?;
            let values = args
                .split(',')
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::InvalidDomain(format!("`{t}` is not a nonnegative integer in `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if values.len() != expected {
                return Err(Error::InvalidDomain(format!(
                    "`{s}` needs {expected} integer parameter(s), found {}",
                    values.len()
                )));
            }
            Ok(values)
        };
        let no_args = || -> Result<()> {
            match args {
                None => Ok(()),
                Some(_) => Err(Error::InvalidDomain(format!("`{s}` takes no parameters"))),
            }
        };
        let spec = match head {
            "typei" => {
                let v = ints(2)?;
                DomainSpec::TypeI { m: v[0], n: v[1] }
            }
            "typeii" => DomainSpec::TypeII { m: ints(1)?[0] },
            "typeiii" => DomainSpec::TypeIII { n: ints(1)?[0] },
            "typeiv" => DomainSpec::TypeIV { n: ints(1)?[0] },
            "typev" => {
                no_args()?;
                DomainSpec::TypeV
            }
            "typevi" => {
                no_args()?;
                DomainSpec::TypeVI
            }
            "custom" => {
                let v = ints(3)?;
                DomainSpec::Custom { r: v[0], a: v[1], b: v[2] }
            }
            _ => return Err(Error::InvalidDomain(format!("unknown domain family in `{s}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A discrepancy between a commonly printed value and the value forced by
/// the dimension and genus identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Erratum {
    pub quantity: &'static str,
    pub printed: String,
    pub catalog: String,
    pub reason: &'static str,
}

/// The numeric fingerprint of an irreducible bounded symmetric domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanDomain {
    pub spec: DomainSpec,
    /// Rank `r`.
    pub rank: u32,
    /// Off-diagonal multiplicity `a`.
    pub a: u32,
    /// Boundary multiplicity `b`; zero exactly for tube-type domains.
    pub b: u32,
    /// Complex dimension `n`.
    pub dim: u32,
    /// Complex dimension of the maximal tube-type subdomain.
    pub tube_dim: u32,
    /// Genus `p`.
    pub genus: u32,
}

impl CartanDomain {
    pub fn new(spec: DomainSpec) -> Result<Self> {
        spec.validate()?;
        let (r, a, b) = spec.rank_and_multiplicities();
        let tube_dim = r + r * (r - 1) / 2 * a;
        let dim = tube_dim + r * b;
        let genus = (dim + tube_dim) / r;
        debug_assert_eq!((dim + tube_dim) % r, 0);
        debug_assert_eq!(genus, 2 + (r - 1) * a + b);
        Ok(Self { spec, rank: r, a, b, dim, tube_dim, genus })
    }

    /// Convenience for [`CartanDomain::new`] on a parsed spec string.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn is_tube_type(&self) -> bool {
        self.b == 0
    }

    /// Lower bound of the admissible weights: `λ > p - 1`.
    pub fn weight_bound(&self) -> f64 {
        f64::from(self.genus) - 1.0
    }

    pub fn check_weight(&self, lambda: f64) -> Result<()> {
        let bound = self.weight_bound();
        if lambda.is_finite() && lambda > bound {
            Ok(())
        } else {
            Err(Error::WeightOutOfRange { lambda, bound })
        }
    }

    /// True for custom entries whose `(r, a, b)` no actual domain realizes.
    pub fn is_formal(&self) -> bool {
        match self.spec {
            DomainSpec::Custom { .. } => !is_realized(self.rank, self.a, self.b),
            _ => false,
        }
    }

    pub fn errata(&self) -> Vec<Erratum> {
        match self.spec {
            DomainSpec::TypeIV { n } => alloc::vec![Erratum {
                quantity: "a",
                printed: format!("n-1 = {}", n - 1),
                catalog: format!("n-2 = {}", n - 2),
                reason: "r = 2, b = 0 and dim = n force n = 2 + a; the genus p = 2 + a then equals n",
            }],
            DomainSpec::TypeVI => alloc::vec![Erratum {
                quantity: "p",
                printed: "26".to_string(),
                catalog: format!("{}", self.genus),
                reason: "p = 2 + (r-1)a + b = 2 + 2*8 = 18 = (n + n_T)/r = 54/3",
            }],
            _ => Vec::new(),
        }
    }
}

fn is_realized(r: u32, a: u32, b: u32) -> bool {
    r == 1
        || a == 2
        || (a == 4 && (b == 0 || b == 2))
        || (a == 1 && b == 0)
        || (r == 2 && b == 0)
        || (r, a, b) == (2, 6, 4)
        || (r, a, b) == (3, 8, 0)
}
