//! Execution backends for embarrassingly parallel sweeps.
//!
//! Results are always returned in input order, so output does not depend on the
//! backend. Without the `parallel` feature `Parallel` runs sequentially.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    Sequential,
    #[default]
    Parallel,
}

impl Backend {
    pub fn available() -> &'static [Backend] {
        if cfg!(feature = "parallel") {
            &[Backend::Sequential, Backend::Parallel]
        } else {
            &[Backend::Sequential]
        }
    }
}

pub fn map<T, R, F>(backend: Backend, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match backend {
        #[cfg(feature = "parallel")]
        Backend::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backends_agree() {
        let xs: Vec<u64> = (0..500).collect();
        let outs: Vec<Vec<u64>> = Backend::available().iter().map(|&b| map(b, &xs, |x| x * x + 1)).collect();
        assert!(outs.windows(2).all(|w| w[0] == w[1]));
    }
}
