//! Integer compositions: ordered sequences of positive parts with a fixed sum.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`compositions`]; there are `2^(n-1)` compositions of `n`.
pub const MAX_COMPOSITION_SIZE: usize = 62;

/// Composition lists for `n` up to this bound are cached after first use.
const CACHED_UP_TO: usize = 16;

/// An ordered list of positive integers. For an `N`-plate stack the parts sum
/// to `N - 1` and each part of size `c` is one scattering factor spanning `c` gaps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidStack(format!(
                "composition parts must be positive and non-empty, got {parts:?}"
            )));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Plate indices (0-based) where the factors of this term begin and end:
    /// `p_0 = 0`, `p_j = p_{j-1} + c_j`.
    pub fn boundaries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().scan(0usize, |start, &c| {
            let from = *start;
            *start += c;
            Some((from, *start))
        })
    }
}

/// Lexicographic iterator over the compositions of `n`, starting at `(1, 1, …, 1)`
/// and ending at `(n)`.
#[derive(Debug, Clone)]
pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        if current.len() > 1 {
            // pop the last part L, bump the new last part, refill with L-1 ones
            let mut succ = current.clone();
            let last = succ.pop().unwrap();
            *succ.last_mut().unwrap() += 1;
            succ.extend(std::iter::repeat_n(1, last - 1));
            self.next = Some(succ);
        }
        Some(Composition { parts: current })
    }
}

pub fn compositions_iter(n: usize) -> Result<Compositions> {
    if n == 0 || n > MAX_COMPOSITION_SIZE {
        return Err(Error::CompositionBound(n));
    }
    Ok(Compositions {
        next: Some(vec![1; n]),
    })
}

/// All `2^(n-1)` compositions of `n` in lexicographic order.
pub fn compositions(n: usize) -> Result<Vec<Composition>> {
    Ok(compositions_iter(n)?.collect())
}

pub(crate) fn cached_compositions(n: usize) -> Result<Arc<[Composition]>> {
    static CACHE: [OnceLock<Arc<[Composition]>>; CACHED_UP_TO] =
        [const { OnceLock::new() }; CACHED_UP_TO];
    if (1..=CACHED_UP_TO).contains(&n) {
        Ok(CACHE[n - 1]
            .get_or_init(|| compositions_iter(n).unwrap().collect())
            .clone())
    } else {
        Ok(compositions_iter(n)?.collect())
    }
}
