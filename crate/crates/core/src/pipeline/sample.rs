use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::text::{Document, Level};
use crate::{Error, Result};

/// Splits `total` proportionally to `weights`, handing leftover units to the
/// largest fractional parts (earlier entries win ties).
pub fn largest_remainder(total: usize, weights: &[usize]) -> Vec<usize> {
    let sum: usize = weights.iter().sum();
    if sum == 0 {
        return vec![0; weights.len()];
    }
    let mut quotas: Vec<usize> = weights.iter().map(|w| total * w / sum).collect();
    let mut rest: Vec<(usize, usize)> = weights.iter().enumerate().map(|(i, w)| (total * w % sum, i)).collect();
    rest.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let short = total - quotas.iter().sum::<usize>();
    for &(_, i) in rest.iter().take(short) {
        quotas[i] += 1;
    }
    quotas
}

pub(crate) fn shuffled<'a>(mut docs: Vec<&'a Document>, rng: &mut ChaCha8Rng) -> Vec<&'a Document> {
    docs.sort_by(|a, b| a.id.cmp(&b.id));
    docs.shuffle(rng);
    docs
}

/// Draws `total` documents whose LOW/MID/HIGH counts follow `ratio`.
/// Documents without a level are ignored.
pub fn balanced_sample(docs: &[Document], ratio: [usize; 3], total: usize, seed: u64) -> Result<Vec<Document>> {
    let quotas = largest_remainder(total, &ratio);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(total);
    for (level, quota) in Level::ALL.into_iter().zip(quotas) {
        let pool: Vec<&Document> = docs.iter().filter(|d| d.level == Some(level)).collect();
        if pool.len() < quota {
            return Err(Error::InsufficientStratum { level, needed: quota, available: pool.len() });
        }
        let mut picked: Vec<&Document> = shuffled(pool, &mut rng).into_iter().take(quota).collect();
        picked.sort_by(|a, b| a.id.cmp(&b.id));
        out.extend(picked.into_iter().cloned());
    }
    Ok(out)
}
