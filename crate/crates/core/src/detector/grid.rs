use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{evaluate, train, FeatureSchema, FeatureVector, Kernel, MarginModel, TrainOptions};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct GridConfig<T> {
    pub kernels: Vec<Kernel>,
    pub cs: Vec<T>,
    pub gammas: Vec<T>,
    pub options: TrainOptions,
}

impl<T: Scalar> Default for GridConfig<T> {
    fn default() -> Self {
        GridConfig {
            kernels: vec![Kernel::Linear, Kernel::Rbf],
            cs: [0.1, 1.0, 10.0, 100.0].map(T::lit).to_vec(),
            gammas: [0.001, 0.01, 0.1, 1.0].map(T::lit).to_vec(),
            options: TrainOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Trial<T> {
    pub kernel: Kernel,
    pub c: T,
    pub gamma: Option<T>,
    pub dev_accuracy: T,
}

#[derive(Debug, Clone)]
pub struct GridResult<T> {
    pub best: MarginModel<T>,
    pub dev_accuracy: T,
    pub trials: Vec<Trial<T>>,
}

/// Higher dev accuracy first, then smaller C, LINEAR before RBF, smaller gamma.
fn rank<T: Scalar>(a: &Trial<T>, b: &Trial<T>) -> Ordering {
    let cmp = |x: T, y: T| x.partial_cmp(&y).unwrap_or(Ordering::Equal);
    cmp(b.dev_accuracy, a.dev_accuracy)
        .then(cmp(a.c, b.c))
        .then(a.kernel.cmp(&b.kernel))
        .then(cmp(a.gamma.unwrap_or_else(T::zero), b.gamma.unwrap_or_else(T::zero)))
}

/// Trains every configuration on `train_set` and keeps the best on `dev`.
pub fn grid_search<T: Scalar>(
    train_set: &[FeatureVector<T>],
    dev: &[FeatureVector<T>],
    schema: &FeatureSchema,
    config: &GridConfig<T>,
) -> Result<GridResult<T>> {
    if dev.is_empty() {
        return Err(Error::EmptyTest);
    }
    let mut configs = Vec::new();
    for &c in &config.cs {
        for &kernel in &config.kernels {
            match kernel {
                Kernel::Linear => configs.push((kernel, c, None)),
                Kernel::Rbf => configs.extend(config.gammas.iter().map(|&g| (kernel, c, Some(g)))),
            }
        }
    }
    if configs.is_empty() {
        return Err(Error::InvalidConfig("empty parameter grid".into()));
    }
    let results: Vec<(Trial<T>, MarginModel<T>)> = configs
        .par_iter()
        .map(|&(kernel, c, gamma)| {
            let model = train(train_set, schema, kernel, c, gamma, &config.options)?;
            let report = evaluate(&model, dev)?;
            Ok((Trial { kernel, c, gamma, dev_accuracy: report.accuracy }, model))
        })
        .collect::<Result<_>>()?;
    let trials: Vec<Trial<T>> = results.iter().map(|(t, _)| t.clone()).collect();
    let (best_trial, best) = results
        .into_iter()
        .min_by(|a, b| rank(&a.0, &b.0))
        .expect("grid is non-empty");
    for t in &trials {
        log::debug!("{} C={} gamma={:?} dev={}", t.kernel.as_str(), t.c, t.gamma, t.dev_accuracy);
    }
    Ok(GridResult { best, dev_accuracy: best_trial.dev_accuracy, trials })
}
