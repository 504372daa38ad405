use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{FeatureVector, Granularity, MarginModel};
use crate::text::Author;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClassCounts {
    pub support: usize,
    pub predicted: usize,
    pub correct: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct EvalReport<T> {
    pub granularity: Granularity,
    pub n: usize,
    pub correct: usize,
    pub accuracy: T,
    pub majority_baseline: T,
    pub human: ClassCounts,
    pub machine: ClassCounts,
}

pub fn evaluate<T: Scalar>(model: &MarginModel<T>, test: &[FeatureVector<T>]) -> Result<EvalReport<T>> {
    let first = test.first().ok_or(Error::EmptyTest)?;
    let mut human = ClassCounts::default();
    let mut machine = ClassCounts::default();
    for v in test {
        let p = model.predict(v);
        let truth = if v.label == Author::Human { &mut human } else { &mut machine };
        truth.support += 1;
        if p == v.label {
            truth.correct += 1;
        }
        if p == Author::Human { human.predicted += 1 } else { machine.predicted += 1 }
    }
    let n = test.len();
    let correct = human.correct + machine.correct;
    Ok(EvalReport {
        granularity: first.granularity,
        n,
        correct,
        accuracy: T::count(correct) / T::count(n),
        majority_baseline: T::count(human.support.max(machine.support)) / T::count(n),
        human,
        machine,
    })
}

impl<T: Scalar> EvalReport<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn write_eval_csv<T: Scalar, W: Write>(reports: &[EvalReport<T>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "granularity", "n", "accuracy", "majority_baseline", "human_support", "human_correct",
        "machine_support", "machine_correct",
    ])?;
    for r in reports {
        w.write_record([
            r.granularity.as_str().to_string(),
            r.n.to_string(),
            format!("{:.4}", r.accuracy.to_f64_lossy()),
            format!("{:.4}", r.majority_baseline.to_f64_lossy()),
            r.human.support.to_string(),
            r.human.correct.to_string(),
            r.machine.support.to_string(),
            r.machine.correct.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}
