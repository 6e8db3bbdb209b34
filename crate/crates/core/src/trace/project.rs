use super::lasso::Lasso;
use super::monoid::TraceMonoid;
use super::normal_form::Trace;
use super::TraceError;

fn check_nested(mi: &TraceMonoid, mj: &TraceMonoid) -> Result<(), TraceError> {
    if mi.names() != mj.names() {
        return Err(TraceError::AlphabetMismatch);
    }
    let nested = mi
        .independence_pairs()
        .into_iter()
        .all(|(a, b)| mj.independent(a, b));
    if nested {
        Ok(())
    } else {
        Err(TraceError::IndependenceNotNested)
    }
}

/// Image of `x` under the canonical surjection `M(Σ, I) → M(Σ, J)`, `I ⊆ J`.
pub fn project_trace(mi: &TraceMonoid, mj: &TraceMonoid, x: &Trace) -> Result<Trace, TraceError> {
    check_nested(mi, mj)?;
    mj.normalize(&x.word())
}

/// Image of an eventually periodic generalized trace.
///
/// After `k` turns of the cycle past the prefix, every later piece lands
/// above layer `k` of the image, so the first `k` image layers are final.
/// The period of the image is found by unrolling until a repetition shows up
/// over a stretch several periods long.
pub fn project_lasso(mi: &TraceMonoid, mj: &TraceMonoid, w: &Lasso) -> Result<Lasso, TraceError> {
    check_nested(mi, mj)?;
    if w.is_finite() {
        let x = mj.normalize(&w.truncate(w.prefix().len()).word())?;
        return Ok(Lasso::finite(&x));
    }
    let base = w.prefix().len() + w.cycle().len();
    let mut turns = 4 * (base + 1);
    loop {
        let n = w.prefix().len() + turns * w.cycle().len();
        let image = mj.normalize(&w.truncate(n).word())?;
        let fin = &image.layers()[..turns.min(image.height())];
        if let Some(lasso) = detect_period(mj, fin) {
            return Ok(lasso);
        }
        turns *= 2;
        if turns > 1 << 14 {
            return Err(TraceError::PeriodNotFound);
        }
    }
}

/// Smallest `(start, period)` such that `layers[i] = layers[i + period]` on the
/// whole available range and the repeated block spans at least half of it.
fn detect_period(m: &TraceMonoid, layers: &[super::Clique]) -> Option<Lasso> {
    let n = layers.len();
    for total in 1..=n / 2 {
        for period in 1..=total {
            let start = total - period;
            if n - start < 3 * period || start > n / 2 {
                continue;
            }
            if (start..n - period).all(|i| layers[i] == layers[i + period]) {
                let prefix = layers[..start].to_vec();
                let cycle = layers[start..start + period].to_vec();
                if let Ok(l) = Lasso::new(m, prefix, cycle) {
                    return Some(l);
                }
            }
        }
    }
    None
}
