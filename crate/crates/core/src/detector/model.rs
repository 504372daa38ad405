use std::collections::HashMap;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{FeatureSchema, FeatureVector, Scaler, Scaling};
use crate::text::Author;
use crate::{Error, Result, Scalar};

pub const MODEL_FORMAT: &str = "essaylens-margin-model";
pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Kernel {
    Linear,
    Rbf,
}

impl Kernel {
    pub fn as_str(self) -> &'static str {
        match self {
            Kernel::Linear => "LINEAR",
            Kernel::Rbf => "RBF",
        }
    }

    pub fn parse(s: &str) -> Option<Kernel> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Some(Kernel::Linear),
            "rbf" => Some(Kernel::Rbf),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainOptions {
    pub seed: u64,
    pub scaling: Scaling,
    /// Relative objective change that stops the linear solver.
    pub objective_tol: f64,
    pub max_epochs: usize,
    /// KKT violation tolerance of the kernel solver.
    pub kkt_tol: f64,
}

impl Default for TrainOptions {
    fn default() -> Self {
        TrainOptions { seed: 42, scaling: Scaling::ZScore, objective_tol: 1e-4, max_epochs: 200, kkt_tol: 1e-3 }
    }
}

/// Soft-margin binary classifier; positive decision values mean MACHINE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MarginModel<T> {
    pub format: String,
    pub version: u32,
    pub schema: FeatureSchema,
    pub kernel: Kernel,
    pub c: T,
    pub gamma: Option<T>,
    pub scaler: Scaler<T>,
    /// Primal weights (linear kernel only).
    pub weights: Vec<T>,
    /// Scaled support vectors and their `alpha * y` (RBF only).
    pub support_vectors: Vec<Vec<T>>,
    pub dual_coef: Vec<T>,
    pub bias: T,
    pub majority: Author,
    pub fingerprint: String,
    pub seed: u64,
}

fn sign<T: Scalar>(a: Author) -> T {
    match a {
        Author::Machine => T::one(),
        Author::Human => -T::one(),
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn rbf<T: Scalar>(gamma: T, a: &[T], b: &[T]) -> T {
    let d2: T = a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum();
    (-gamma * d2).exp()
}

/// SHA-256 over the training rows and labels.
fn fingerprint<T: Scalar>(vectors: &[FeatureVector<T>], rows: &[Vec<T>]) -> String {
    let mut h = Sha256::new();
    for (v, row) in vectors.iter().zip(rows) {
        h.update(v.doc_id.as_bytes());
        h.update([0, v.label as u8]);
        for x in row {
            h.update(x.to_f64_lossy().to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

pub fn train<T: Scalar>(
    vectors: &[FeatureVector<T>],
    schema: &FeatureSchema,
    kernel: Kernel,
    c: T,
    gamma: Option<T>,
    opts: &TrainOptions,
) -> Result<MarginModel<T>> {
    if vectors.is_empty() {
        return Err(Error::EmptyTrain);
    }
    if c.is_nan() || c <= T::zero() {
        return Err(Error::InvalidConfig(format!("C must be positive, got {c}")));
    }
    let gamma = match kernel {
        Kernel::Linear => None,
        Kernel::Rbf => match gamma {
            Some(g) if g > T::zero() => Some(g),
            _ => return Err(Error::InvalidConfig("RBF kernel needs a positive gamma".into())),
        },
    };
    let rows: Vec<Vec<T>> = vectors.iter().map(|v| v.dense(schema)).collect();
    for (i, row) in rows.iter().enumerate() {
        if let Some(j) = row.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteFeature { row: i, col: j });
        }
    }
    let n_machine = vectors.iter().filter(|v| v.label == Author::Machine).count();
    if n_machine == 0 || n_machine == vectors.len() {
        return Err(Error::SingleClass);
    }
    let majority = if 2 * n_machine > vectors.len() { Author::Machine } else { Author::Human };
    let y: Vec<T> = vectors.iter().map(|v| sign(v.label)).collect();
    let scaler = Scaler::fit(&rows, opts.scaling);
    let x = scaler.transform_all(&rows);

    let mut model = MarginModel {
        format: MODEL_FORMAT.to_string(),
        version: MODEL_VERSION,
        schema: schema.clone(),
        kernel,
        c,
        gamma,
        scaler,
        weights: Vec::new(),
        support_vectors: Vec::new(),
        dual_coef: Vec::new(),
        bias: T::zero(),
        majority,
        fingerprint: fingerprint(vectors, &rows),
        seed: opts.seed,
    };
    match kernel {
        Kernel::Linear => {
            let w = pegasos(&x, &y, c, opts);
            let d = schema.len();
            model.bias = w[d];
            model.weights = w[..d].to_vec();
        }
        Kernel::Rbf => {
            let g = gamma.expect("checked above");
            let (alpha, rho) = smo(&x, &y, c, |a, b| rbf(g, a, b), opts.kkt_tol);
            for (i, &a) in alpha.iter().enumerate() {
                if a > T::zero() {
                    model.support_vectors.push(x[i].clone());
                    model.dual_coef.push(a * y[i]);
                }
            }
            model.bias = -rho;
        }
    }
    Ok(model)
}

/// Primal sub-gradient descent on
/// `lambda/2 |w|^2 + mean(hinge)` with the bias as an extra constant feature.
/// Returns the epoch-averaged iterate with the lowest objective.
fn pegasos<T: Scalar>(x: &[Vec<T>], y: &[T], c: T, opts: &TrainOptions) -> Vec<T> {
    let n = x.len();
    let d = x[0].len() + 1;
    let lambda = T::one() / (c * T::count(n));
    let radius = T::one() / lambda.sqrt();
    let aug = |i: usize, k: usize| if k + 1 == d { T::one() } else { x[i][k] };
    let objective = |w: &[T]| {
        let reg = lambda * dot(w, w) / T::lit(2.0);
        let loss: T = (0..n)
            .map(|i| {
                let m = y[i] * (0..d).map(|k| w[k] * aug(i, k)).sum::<T>();
                (T::one() - m).max(T::zero())
            })
            .sum();
        reg + loss / T::count(n)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut w = vec![T::zero(); d];
    let mut best = w.clone();
    let mut best_obj = objective(&w);
    let mut prev_obj = best_obj;
    let mut t = 0usize;
    for _ in 0..opts.max_epochs {
        order.shuffle(&mut rng);
        let mut avg = vec![T::zero(); d];
        for &i in &order {
            t += 1;
            let eta = T::one() / (lambda * T::count(t));
            let margin = y[i] * (0..d).map(|k| w[k] * aug(i, k)).sum::<T>();
            let decay = T::one() - T::one() / T::count(t);
            for wk in w.iter_mut() {
                *wk = *wk * decay;
            }
            if margin < T::one() {
                for (k, wk) in w.iter_mut().enumerate() {
                    *wk = *wk + eta * y[i] * aug(i, k);
                }
            }
            let norm = dot(&w, &w).sqrt();
            if norm > radius {
                let s = radius / norm;
                for wk in w.iter_mut() {
                    *wk = *wk * s;
                }
            }
            for (a, &wk) in avg.iter_mut().zip(&w) {
                *a = *a + wk;
            }
        }
        for a in avg.iter_mut() {
            *a = *a / T::count(n);
        }
        let obj = objective(&avg);
        if obj < best_obj {
            best_obj = obj;
            best = avg;
        }
        let scale = prev_obj.abs().max(T::epsilon());
        if ((prev_obj - obj).abs() / scale).to_f64_lossy() < opts.objective_tol {
            break;
        }
        prev_obj = obj;
    }
    best
}

/// Kernel rows computed on demand, with a bounded cache.
struct KernelRows<'a, T, K> {
    x: &'a [Vec<T>],
    k: K,
    cache: HashMap<usize, Vec<T>>,
    capacity: usize,
}

impl<'a, T: Scalar, K: Fn(&[T], &[T]) -> T> KernelRows<'a, T, K> {
    fn row(&mut self, i: usize) -> Vec<T> {
        if let Some(r) = self.cache.get(&i) {
            return r.clone();
        }
        let r: Vec<T> = self.x.iter().map(|xj| (self.k)(&self.x[i], xj)).collect();
        if self.cache.len() >= self.capacity {
            self.cache.clear();
        }
        self.cache.insert(i, r.clone());
        r
    }
}

/// Sequential minimal optimization of the C-SVC dual with maximal violating
/// pair selection. Returns `(alpha, rho)`; decision is `sum(alpha y K) - rho`.
fn smo<T: Scalar>(x: &[Vec<T>], y: &[T], c: T, k: impl Fn(&[T], &[T]) -> T, tol: f64) -> (Vec<T>, T) {
    let n = x.len();
    let capacity = (50_000_000 / n.max(1)).clamp(2, n.max(2));
    let diag: Vec<T> = x.iter().map(|xi| k(xi, xi)).collect();
    let mut rows = KernelRows { x, k, cache: HashMap::new(), capacity };
    let mut alpha = vec![T::zero(); n];
    let mut grad = vec![-T::one(); n];
    let tau = T::lit(1e-12);
    let tol = T::lit(tol);
    let max_iter = (100 * n).max(100_000);
    let up = |a: T, yi: T| (yi > T::zero() && a < c) || (yi < T::zero() && a > T::zero());
    let low = |a: T, yi: T| (yi > T::zero() && a > T::zero()) || (yi < T::zero() && a < c);

    let mut iter = 0;
    loop {
        let mut i = None;
        let mut g_max = T::neg_infinity();
        let mut j = None;
        let mut g_min = T::infinity();
        for t in 0..n {
            let v = -y[t] * grad[t];
            if up(alpha[t], y[t]) && v > g_max {
                g_max = v;
                i = Some(t);
            }
            if low(alpha[t], y[t]) && v < g_min {
                g_min = v;
                j = Some(t);
            }
        }
        let (Some(i), Some(j)) = (i, j) else { break };
        if g_max - g_min < tol {
            break;
        }
        if iter >= max_iter {
            log::warn!("kernel solver stopped after {iter} iterations without reaching tolerance");
            break;
        }
        iter += 1;

        let ki = rows.row(i);
        let kj = rows.row(j);
        let (old_i, old_j) = (alpha[i], alpha[j]);
        if y[i] != y[j] {
            let quad = (diag[i] + diag[j] + T::lit(2.0) * (y[i] * y[j] * ki[j])).max(tau);
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] = alpha[i] + delta;
            alpha[j] = alpha[j] + delta;
            if diff > T::zero() {
                if alpha[j] < T::zero() {
                    alpha[j] = T::zero();
                    alpha[i] = diff;
                }
            } else if alpha[i] < T::zero() {
                alpha[i] = T::zero();
                alpha[j] = -diff;
            }
            if diff > T::zero() {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let quad = (diag[i] + diag[j] - T::lit(2.0) * (y[i] * y[j] * ki[j])).max(tau);
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] = alpha[i] - delta;
            alpha[j] = alpha[j] + delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < T::zero() {
                alpha[j] = T::zero();
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < T::zero() {
                alpha[i] = T::zero();
                alpha[j] = sum;
            }
        }
        let (di, dj) = (alpha[i] - old_i, alpha[j] - old_j);
        for t in 0..n {
            grad[t] = grad[t] + y[t] * (y[i] * ki[t] * di + y[j] * kj[t] * dj);
        }
    }

    let mut ub = T::infinity();
    let mut lb = T::neg_infinity();
    let mut free = 0usize;
    let mut sum_free = T::zero();
    for t in 0..n {
        let yg = y[t] * grad[t];
        let at_upper = alpha[t] >= c;
        let at_lower = alpha[t] <= T::zero();
        if at_upper {
            if y[t] < T::zero() {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else if at_lower {
            if y[t] > T::zero() {
                ub = ub.min(yg);
            } else {
                lb = lb.max(yg);
            }
        } else {
            free += 1;
            sum_free = sum_free + yg;
        }
    }
    let rho = if free > 0 { sum_free / T::count(free) } else { (ub + lb) / T::lit(2.0) };
    (alpha, rho)
}

impl<T: Scalar> MarginModel<T> {
    pub fn decision_dense(&self, row: &[T]) -> T {
        let x = self.scaler.transform(row);
        match self.kernel {
            Kernel::Linear => dot(&self.weights, &x) + self.bias,
            Kernel::Rbf => {
                let g = self.gamma.unwrap_or_else(T::zero);
                self.support_vectors.iter().zip(&self.dual_coef).map(|(sv, &a)| a * rbf(g, sv, &x)).sum::<T>()
                    + self.bias
            }
        }
    }

    pub fn decision(&self, v: &FeatureVector<T>) -> T {
        self.decision_dense(&v.dense(&self.schema))
    }

    /// A zero decision value falls back to the training majority class.
    pub fn predict(&self, v: &FeatureVector<T>) -> Author {
        let f = self.decision(v);
        if f > T::zero() {
            Author::Machine
        } else if f < T::zero() {
            Author::Human
        } else {
            self.majority
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: MarginModel<T> = serde_json::from_str(s).map_err(|e| Error::Json { line: e.line(), source: e })?;
        if m.format != MODEL_FORMAT || m.version != MODEL_VERSION {
            return Err(Error::InvalidDocument(format!(
                "unsupported model file {} v{}, expected {MODEL_FORMAT} v{MODEL_VERSION}",
                m.format, m.version
            )));
        }
        if (m.kernel == Kernel::Rbf) != m.gamma.is_some() {
            return Err(Error::InvalidDocument("gamma must be present exactly for the RBF kernel".into()));
        }
        Ok(m)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let s = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detector::{Family, FitParams, Granularity};

    pub(crate) fn toy(points: &[(f64, f64, Author)]) -> (FeatureSchema, Vec<FeatureVector<f64>>) {
        let schema = FeatureSchema::new(Family::Punctuation, vec!["a".into(), "b".into()], FitParams::default());
        let vs = points
            .iter()
            .enumerate()
            .map(|(i, &(a, b, label))| FeatureVector {
                doc_id: format!("p{i}"),
                label,
                granularity: Granularity::Doc,
                values: [("a".to_string(), a), ("b".to_string(), b)].into_iter().collect(),
            })
            .collect();
        (schema, vs)
    }

    fn accuracy(m: &MarginModel<f64>, vs: &[FeatureVector<f64>]) -> f64 {
        vs.iter().filter(|v| m.predict(v) == v.label).count() as f64 / vs.len() as f64
    }

    const H: Author = Author::Human;
    const M: Author = Author::Machine;

    #[test]
    fn separable_toy() {
        let pts = [
            (0.0, 0.1, H), (0.2, 0.4, H), (0.5, 0.0, H), (0.1, 0.9, H), (0.7, 0.3, H),
            (3.0, 3.1, M), (2.6, 3.5, M), (3.4, 2.8, M), (2.9, 4.0, M), (4.1, 3.0, M),
        ];
        let (schema, vs) = toy(&pts);
        let opts = TrainOptions::default();
        let lin = train(&vs, &schema, Kernel::Linear, 1.0, None, &opts).unwrap();
        assert_eq!(accuracy(&lin, &vs), 1.0);
        assert!(vs.iter().all(|v| lin.decision(v) * sign::<f64>(v.label) > 0.0));
        let k = train(&vs, &schema, Kernel::Rbf, 1.0, Some(0.5), &opts).unwrap();
        assert_eq!(accuracy(&k, &vs), 1.0);
    }

    #[test]
    fn xor() {
        let (schema, vs) = toy(&[(0.0, 0.0, H), (1.0, 1.0, H), (0.0, 1.0, M), (1.0, 0.0, M)]);
        let opts = TrainOptions::default();
        let k = train(&vs, &schema, Kernel::Rbf, 10.0, Some(1.0), &opts).unwrap();
        assert_eq!(accuracy(&k, &vs), 1.0);
        let lin = train(&vs, &schema, Kernel::Linear, 10.0, None, &opts).unwrap();
        assert!(accuracy(&lin, &vs) <= 0.75);
    }

    #[test]
    fn identical_rows_predict_majority() {
        let (schema, vs) = toy(&[(1.0, 1.0, M), (1.0, 1.0, M), (1.0, 1.0, M), (1.0, 1.0, H), (1.0, 1.0, H)]);
        for kernel in [Kernel::Linear, Kernel::Rbf] {
            let m = train(&vs, &schema, kernel, 1.0, Some(0.1), &TrainOptions::default()).unwrap();
            assert_eq!(accuracy(&m, &vs), 0.6, "{kernel:?}");
        }
    }

    #[test]
    fn errors() {
        let (schema, mut vs) = toy(&[(1.0, 2.0, M), (0.0, 1.0, M)]);
        let opts = TrainOptions::default();
        assert!(matches!(train(&vs, &schema, Kernel::Linear, 1.0, None, &opts), Err(Error::SingleClass)));
        assert!(matches!(train(&[], &schema, Kernel::Linear, 1.0, None, &opts), Err(Error::EmptyTrain)));
        vs[1].label = H;
        vs[1].values.insert("b".into(), f64::NAN);
        assert!(matches!(
            train(&vs, &schema, Kernel::Linear, 1.0, None, &opts),
            Err(Error::NonFiniteFeature { row: 1, col: 1 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let (schema, vs) = toy(&[(0.0, 0.0, H), (1.0, 1.0, H), (0.0, 1.0, M), (1.0, 0.0, M)]);
        let m = train(&vs, &schema, Kernel::Rbf, 10.0, Some(1.0), &TrainOptions::default()).unwrap();
        let back = MarginModel::<f64>::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        let linear = train(&vs, &schema, Kernel::Linear, 1.0, Some(1.0), &TrainOptions::default()).unwrap();
        assert_eq!(linear.gamma, None);
        let bad = m.to_json().replace("\"version\": 1", "\"version\": 99");
        assert!(MarginModel::<f64>::from_json(&bad).is_err());
    }
}
