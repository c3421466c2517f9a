use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Power product of named parameters. Absent names have exponent zero.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the alphabetically first parameter, and so on.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: BTreeMap<String, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(name: impl Into<String>) -> Self {
        Self::power(name, 1)
    }

    pub fn power(name: impl Into<String>, exp: u32) -> Self {
        let mut exponents = BTreeMap::new();
        if exp > 0 {
            exponents.insert(name.into(), exp);
        }
        Self { exponents }
    }

    /// Builds a monomial from `(name, exponent)` pairs; repeated names add up.
    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, u32)>) -> Self {
        let mut m = Self::one();
        for (name, exp) in pairs {
            m = m.mul(&Self::power(name, exp));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.exponents.get(name).copied().unwrap_or(0)
    }

    /// `(name, exponent)` pairs in alphabetical order, exponents all positive.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.exponents.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exponents = self.exponents.clone();
        for (k, v) in &other.exponents {
            *exponents.entry(k.clone()).or_insert(0) += v;
        }
        Monomial { exponents }
    }

    /// Removes `name` from the monomial and returns its former exponent.
    pub fn without(&self, name: &str) -> (Monomial, u32) {
        let mut exponents = self.exponents.clone();
        let e = exponents.remove(name).unwrap_or(0);
        (Monomial { exponents }, e)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let mut a = self.exponents.iter().peekable();
        let mut b = other.exponents.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((ka, ea)), Some((kb, eb))) => match ka.cmp(kb) {
                    // `self` carries a variable `other` lacks, and it is the more significant one.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (name, exp)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
