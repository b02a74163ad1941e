//! Surface types `(g, n)` and their disjoint unions.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("surface type ({0},{1}) is not hyperbolic")]
    NotHyperbolic(u32, u32),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("cannot parse surface {0:?}: expected \"g,n(+g,n)*\"")]
    Parse(String),
}

/// A connected surface type: genus and number of punctures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceType {
    pub genus: u32,
    pub punctures: u32,
}

impl SurfaceType {
    pub const fn new(genus: u32, punctures: u32) -> Self {
        SurfaceType { genus, punctures }
    }

    /// `2g - 2 + n > 0`.
    pub fn is_hyperbolic(self) -> bool {
        2 * self.genus as i64 - 2 + self.punctures as i64 > 0
    }

    pub fn is_pants(self) -> bool {
        self == PANTS
    }

    /// `3g - 3 + n`, for hyperbolic types.
    pub fn modular_dimension(self) -> Result<u32, SurfaceError> {
        if !self.is_hyperbolic() {
            return Err(SurfaceError::NotHyperbolic(self.genus, self.punctures));
        }
        Ok(3 * self.genus + self.punctures - 3)
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.genus, self.punctures)
    }
}

pub const PANTS: SurfaceType = SurfaceType::new(0, 3);

/// How a curve cuts a connected surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cut {
    Nonseparating,
    Separating(SurfaceType, SurfaceType),
}

/// Multiset of connected surface types; punctures are unordered.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SurfaceSpec {
    components: Vec<SurfaceType>,
}

impl SurfaceSpec {
    pub fn empty() -> Self {
        SurfaceSpec::default()
    }

    pub fn new(components: impl IntoIterator<Item = SurfaceType>) -> Self {
        let mut components: Vec<SurfaceType> = components.into_iter().collect();
        components.sort_unstable();
        SurfaceSpec { components }
    }

    pub fn single(genus: u32, punctures: u32) -> Self {
        SurfaceSpec::new([SurfaceType::new(genus, punctures)])
    }

    /// Components in sorted order.
    pub fn components(&self) -> &[SurfaceType] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn pants_count(&self) -> usize {
        self.components.iter().filter(|t| t.is_pants()).count()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.components.iter().all(|t| t.is_hyperbolic())
    }

    /// Sum of `3g - 3 + n` over the components.
    pub fn modular_dimension(&self) -> Result<u32, SurfaceError> {
        self.components.iter().map(|t| t.modular_dimension()).sum()
    }

    pub fn disjoint_union(&self, other: &SurfaceSpec) -> SurfaceSpec {
        SurfaceSpec::new(self.components.iter().chain(&other.components).copied())
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for SurfaceSpec {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SurfaceError::Parse(s.to_string());
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(err());
        }
        let mut components = Vec::new();
        for part in trimmed.split('+') {
            let (g, n) = part.split_once(',').ok_or_else(err)?;
            let g = g.trim().parse().map_err(|_| err())?;
            let n = n.trim().parse().map_err(|_| err())?;
            components.push(SurfaceType::new(g, n));
        }
        Ok(SurfaceSpec::new(components))
    }
}

/// The surface left after cutting `t` along one curve of the given kind.
/// The new boundary circles count as punctures.
pub fn cut_type(t: SurfaceType, kind: Cut) -> Result<SurfaceSpec, SurfaceError> {
    if !t.is_hyperbolic() {
        return Err(SurfaceError::NotHyperbolic(t.genus, t.punctures));
    }
    let pieces = match kind {
        Cut::Nonseparating => {
            if t.genus == 0 {
                return Err(SurfaceError::InvalidCut("genus 0 has no nonseparating curves".into()));
            }
            vec![SurfaceType::new(t.genus - 1, t.punctures + 2)]
        }
        Cut::Separating(a, b) => {
            if a.genus + b.genus != t.genus || a.punctures + b.punctures != t.punctures + 2 {
                return Err(SurfaceError::InvalidCut(format!(
                    "({a}) and ({b}) do not add up to ({t}) plus two boundary punctures"
                )));
            }
            if a.punctures == 0 || b.punctures == 0 {
                return Err(SurfaceError::InvalidCut("each side must contain a new boundary".into()));
            }
            vec![a, b]
        }
    };
    if let Some(p) = pieces.iter().find(|p| !p.is_hyperbolic()) {
        return Err(SurfaceError::InvalidCut(format!("piece ({p}) is not hyperbolic")));
    }
    Ok(SurfaceSpec::new(pieces))
}

/// Types whose completed curve complexes are isomorphic.
const EXCEPTIONAL: [(SurfaceType, SurfaceType); 3] = [
    (SurfaceType::new(2, 0), SurfaceType::new(0, 6)),
    (SurfaceType::new(1, 2), SurfaceType::new(0, 5)),
    (SurfaceType::new(1, 1), SurfaceType::new(0, 4)),
];

/// The other members of `t`'s exceptional-isomorphism class.
pub fn exceptional_partners(t: SurfaceType) -> Result<Vec<SurfaceType>, SurfaceError> {
    if !t.is_hyperbolic() {
        return Err(SurfaceError::NotHyperbolic(t.genus, t.punctures));
    }
    Ok(EXCEPTIONAL
        .iter()
        .filter_map(|&(a, b)| {
            if a == t {
                Some(b)
            } else if b == t {
                Some(a)
            } else {
                None
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn st(g: u32, n: u32) -> SurfaceType {
        SurfaceType::new(g, n)
    }

    #[test]
    fn dimensions() {
        assert_eq!(SurfaceSpec::single(0, 4).modular_dimension(), Ok(1));
        assert_eq!(SurfaceSpec::single(0, 3).modular_dimension(), Ok(0));
        assert_eq!("1,1+1,1".parse::<SurfaceSpec>().unwrap().modular_dimension(), Ok(2));
        assert_eq!(SurfaceSpec::single(1, 0).modular_dimension(), Err(SurfaceError::NotHyperbolic(1, 0)));
    }

    #[test]
    fn hyperbolicity() {
        assert!(SurfaceSpec::single(1, 1).is_hyperbolic());
        assert!(!SurfaceSpec::single(1, 0).is_hyperbolic());
        assert!("0,4+2,0".parse::<SurfaceSpec>().unwrap().is_hyperbolic());
    }

    #[test]
    fn unions() {
        let u = SurfaceSpec::single(1, 1).disjoint_union(&SurfaceSpec::single(0, 4));
        assert_eq!(u.components(), &[st(0, 4), st(1, 1)]);
        assert_eq!(u.modular_dimension(), Ok(2));
        assert_eq!(SurfaceSpec::empty().disjoint_union(&SurfaceSpec::single(0, 5)), SurfaceSpec::single(0, 5));
        let twice = SurfaceSpec::single(0, 4).disjoint_union(&SurfaceSpec::single(0, 4));
        assert_eq!(twice.components(), &[st(0, 4), st(0, 4)]);
    }

    #[test]
    fn cuts() {
        assert_eq!(cut_type(st(2, 1), Cut::Nonseparating).unwrap(), SurfaceSpec::single(1, 3));
        let pants = cut_type(st(1, 1), Cut::Nonseparating).unwrap();
        assert_eq!(pants, SurfaceSpec::single(0, 3));
        assert_eq!(pants.pants_count(), 1);
        assert_eq!(pants.modular_dimension(), Ok(0));
        let two = cut_type(st(0, 4), Cut::Separating(st(0, 3), st(0, 3))).unwrap();
        assert_eq!(two.modular_dimension(), Ok(0));
        assert!(cut_type(st(0, 4), Cut::Nonseparating).is_err());
        assert!(cut_type(st(1, 1), Cut::Separating(st(1, 1), st(0, 2))).is_err());
        assert!(cut_type(st(0, 5), Cut::Separating(st(0, 4), st(0, 4))).is_err());
    }

    #[test]
    fn exceptional_table() {
        assert_eq!(exceptional_partners(st(1, 2)), Ok(vec![st(0, 5)]));
        assert_eq!(exceptional_partners(st(1, 1)), Ok(vec![st(0, 4)]));
        assert_eq!(exceptional_partners(st(0, 6)), Ok(vec![st(2, 0)]));
        assert_eq!(exceptional_partners(st(3, 0)), Ok(vec![]));
        assert!(exceptional_partners(st(0, 2)).is_err());
    }

    #[test]
    fn parse_and_print() {
        let s: SurfaceSpec = "1,1+0,4".parse().unwrap();
        assert_eq!(s.to_string(), "0,4+1,1");
        assert!("1".parse::<SurfaceSpec>().is_err());
        assert!("".parse::<SurfaceSpec>().is_err());
        assert!("a,b".parse::<SurfaceSpec>().is_err());
    }

    fn any_type() -> impl Strategy<Value = SurfaceType> {
        (0u32..5, 0u32..8).prop_map(|(g, n)| st(g, n))
    }

    proptest! {
        #[test]
        fn cutting_drops_dimension_by_one(t in any_type(), g1 in 0u32..5, n1 in 1u32..10) {
            prop_assume!(t.is_hyperbolic());
            let d = t.modular_dimension().unwrap();
            if let Ok(s) = cut_type(t, Cut::Nonseparating) {
                prop_assert_eq!(s.modular_dimension().unwrap() + 1, d);
            }
            if g1 <= t.genus && n1 <= t.punctures + 1 {
                let a = st(g1, n1);
                let b = st(t.genus - g1, t.punctures + 2 - n1);
                if let Ok(s) = cut_type(t, Cut::Separating(a, b)) {
                    prop_assert_eq!(s.modular_dimension().unwrap() + 1, d);
                }
            }
        }

        #[test]
        fn union_is_a_monoid_map(a in prop::collection::vec(any_type(), 0..4),
                                 b in prop::collection::vec(any_type(), 0..4),
                                 c in prop::collection::vec(any_type(), 0..4)) {
            let (a, b, c) = (SurfaceSpec::new(a), SurfaceSpec::new(b), SurfaceSpec::new(c));
            prop_assert_eq!(a.disjoint_union(&b), b.disjoint_union(&a));
            prop_assert_eq!(a.disjoint_union(&b).disjoint_union(&c), a.disjoint_union(&b.disjoint_union(&c)));
            if a.is_hyperbolic() && b.is_hyperbolic() {
                prop_assert_eq!(
                    a.disjoint_union(&b).modular_dimension().unwrap(),
                    a.modular_dimension().unwrap() + b.modular_dimension().unwrap()
                );
            }
        }

        #[test]
        fn partners_are_symmetric(t in any_type()) {
            prop_assume!(t.is_hyperbolic());
            for u in exceptional_partners(t).unwrap() {
                prop_assert!(exceptional_partners(u).unwrap().contains(&t));
            }
        }
    }
}
