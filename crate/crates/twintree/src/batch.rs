//! Order-preserving batch evaluation over independent work items.
//!
//! With the `parallel` feature (on by default) the work is spread across a
//! rayon pool; without it the same entry points run sequentially.  Either
//! way results come back in input order, so callers see identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every item of the slice, returning results in input
/// order.  Dispatches to the rayon pool when the `parallel` feature is
/// enabled.
pub fn ordered_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ordered_map_seq(items, f)
    }
}

/// The sequential fallback behind [`ordered_map`], always available so the
/// two execution strategies can be compared directly.
pub fn ordered_map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_keep_input_order() {
        let items: Vec<u64> = (0..1000).collect();
        let out = ordered_map(&items, |&x| x * x);
        let expect: Vec<u64> = items.iter().map(|&x| x * x).collect();
        assert_eq!(out, expect);
    }

    #[test]
    fn both_strategies_agree() {
        let items: Vec<u32> = (0..257).rev().collect();
        let f = |x: &u32| x.wrapping_mul(2654435761).rotate_left(7);
        assert_eq!(ordered_map(&items, f), ordered_map_seq(&items, f));
    }

    #[test]
    fn empty_input_yields_empty_output() {
        let items: Vec<u8> = Vec::new();
        assert!(ordered_map(&items, |&x| x).is_empty());
    }
}
