//! Ascending chains `a_0 ≺ a_1 ≺ …`, the representation of points of an ideal space.
//!
//! The ideal a chain presents is the downward closure of its elements. The same
//! type carries chains of codes, of finite code sets (under `≺_U`) and of simple
//! valuations (under `≺_V`).

use std::fmt;
use std::sync::{Arc, Mutex};

pub struct LazySource<T> {
    source: Box<dyn Iterator<Item = T> + Send>,
    cache: Vec<T>,
    exhausted: bool,
}

pub enum Chain<T> {
    /// A materialized prefix; nothing is known past its end.
    Prefix(Vec<T>),
    /// A non-empty prefix whose last element repeats forever.
    Stationary(Vec<T>),
    /// Element `i` computed on demand.
    Generated(Arc<dyn Fn(usize) -> T + Send + Sync>),
    /// Elements pulled from an iterator and memoized.
    Lazy(Arc<Mutex<LazySource<T>>>),
}

impl<T> Clone for Chain<T>
where
    T: Clone,
{
    fn clone(&self) -> Self {
        match self {
            Chain::Prefix(v) => Chain::Prefix(v.clone()),
            Chain::Stationary(v) => Chain::Stationary(v.clone()),
            Chain::Generated(f) => Chain::Generated(Arc::clone(f)),
            Chain::Lazy(l) => Chain::Lazy(Arc::clone(l)),
        }
    }
}

impl<T: Clone + Send + 'static> Chain<T> {
    pub fn stationary(prefix: Vec<T>) -> Self {
        assert!(!prefix.is_empty(), "stationary chain needs an element");
        Chain::Stationary(prefix)
    }

    pub fn constant(x: T) -> Self {
        Chain::Stationary(vec![x])
    }

    pub fn generated(f: impl Fn(usize) -> T + Send + Sync + 'static) -> Self {
        Chain::Generated(Arc::new(f))
    }

    pub fn lazy(source: impl Iterator<Item = T> + Send + 'static) -> Self {
        Chain::Lazy(Arc::new(Mutex::new(LazySource {
            source: Box::new(source),
            cache: Vec::new(),
            exhausted: false,
        })))
    }

    /// Element `i`, or `None` past the end of a finite prefix.
    pub fn get(&self, i: usize) -> Option<T> {
        match self {
            Chain::Prefix(v) => v.get(i).cloned(),
            Chain::Stationary(v) => Some(v[i.min(v.len() - 1)].clone()),
            Chain::Generated(f) => Some(f(i)),
            Chain::Lazy(lazy) => {
                let mut lazy = lazy.lock().expect("chain source poisoned");
                while lazy.cache.len() <= i && !lazy.exhausted {
                    match lazy.source.next() {
                        Some(x) => lazy.cache.push(x),
                        None => lazy.exhausted = true,
                    }
                }
                lazy.cache.get(i).cloned()
            }
        }
    }

    /// Up to `n` leading elements.
    pub fn prefix(&self, n: usize) -> Vec<T> {
        match self {
            Chain::Prefix(v) => v.iter().take(n).cloned().collect(),
            _ => (0..n).map_while(|i| self.get(i)).collect(),
        }
    }

    /// For stationary chains: the full list of distinct positions before the tail.
    pub fn stationary_prefix(&self) -> Option<&[T]> {
        match self {
            Chain::Stationary(v) => Some(v),
            _ => None,
        }
    }

    /// Checks `prec(a_i, a_{i+1})` over the first `n` elements, and the tail
    /// element against itself for stationary chains.
    pub fn is_ascending(&self, n: usize, mut prec: impl FnMut(&T, &T) -> bool) -> bool {
        let elems = self.prefix(n);
        if !elems.windows(2).all(|w| prec(&w[0], &w[1])) {
            return false;
        }
        match self {
            Chain::Stationary(v) => {
                let last = v.last().expect("non-empty");
                prec(last, last)
            }
            _ => true,
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Chain<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chain::Prefix(v) => f.debug_tuple("Prefix").field(v).finish(),
            Chain::Stationary(v) => f.debug_tuple("Stationary").field(v).finish(),
            Chain::Generated(_) => f.write_str("Generated(..)"),
            Chain::Lazy(_) => f.write_str("Lazy(..)"),
        }
    }
}
