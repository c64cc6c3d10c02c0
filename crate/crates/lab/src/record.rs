//! Sweep output rows and their CSV form.
//!
//! Columns, in order:
//! `trial,generator,params,rho,seeder,seed_count,budget,theory_scale,rounds_to_full,monotone,rng_seed`.
//! `rounds_to_full` is an integer or `never`; `monotone` is `true`/`false`.
//! Lines end in LF and the header row is always present.

use serde::{Deserialize, Serialize};

use crate::error::LabError;

pub const CSV_HEADER: &str =
    "trial,generator,params,rho,seeder,seed_count,budget,theory_scale,rounds_to_full,monotone,rng_seed";

pub const SEEDER_HIGHDEG: &str = "highdeg";
pub const SEEDER_RANDOM_REPAIR: &str = "random-repair";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub trial: usize,
    pub generator: String,
    pub params: String,
    pub rho: String,
    pub seeder: String,
    pub seed_count: usize,
    pub budget: usize,
    pub theory_scale: f64,
    #[serde(with = "rounds_format")]
    pub rounds_to_full: Option<usize>,
    pub monotone: bool,
    pub rng_seed: u64,
}

mod rounds_format {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<usize>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(r) => s.serialize_str(&r.to_string()),
            None => s.serialize_str("never"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<usize>, D::Error> {
        let text = String::deserialize(d)?;
        if text == "never" {
            return Ok(None);
        }
        text.parse()
            .map(Some)
            .map_err(|_| D::Error::custom(format!("rounds_to_full must be an integer or `never`, got `{text}`")))
    }
}

impl ExperimentRecord {
    /// The seeder's provable guarantees that can be checked from the row
    /// alone. Diameter-based checks happen during the sweep itself.
    pub fn check_invariants(&self) -> Result<(), String> {
        let constructive = self.seeder == SEEDER_HIGHDEG || self.seeder == SEEDER_RANDOM_REPAIR;
        if constructive && self.seed_count > self.budget {
            return Err(format!("seed_count {} exceeds budget {}", self.seed_count, self.budget));
        }
        if self.seeder == SEEDER_RANDOM_REPAIR && !self.rounds_to_full.is_some_and(|r| r <= 1) {
            return Err(format!("random-repair seeds not all-active by round 1 ({:?})", self.rounds_to_full));
        }
        if self.seeder == SEEDER_HIGHDEG {
            if self.rounds_to_full.is_none() {
                return Err("highdeg seeds never activated every vertex".into());
            }
            if !self.monotone {
                return Err("highdeg trace deactivated a vertex".into());
            }
        }
        Ok(())
    }

    /// `seed_count / theory_scale`.
    pub fn ratio(&self) -> f64 {
        self.seed_count as f64 / self.theory_scale
    }
}

pub fn write_csv(records: &[ExperimentRecord]) -> Result<String, LabError> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    if records.is_empty() {
        writer.write_record(CSV_HEADER.split(',')).map_err(|e| LabError::Io(e.to_string()))?;
    }
    for record in records {
        record.check_invariants().map_err(|reason| LabError::Violation { reason, record: Box::new(record.clone()) })?;
        writer.serialize(record).map_err(|e| LabError::Io(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| LabError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| LabError::Io(e.to_string()))
}

pub fn read_csv(text: &str) -> Result<Vec<ExperimentRecord>, LabError> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header =
        reader.headers().map_err(|e| LabError::Input(format!("line 1: {e}")))?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(LabError::Input(format!("line 1: unexpected header `{header}`")));
    }
    let mut records = Vec::new();
    for row in reader.deserialize::<ExperimentRecord>() {
        let record = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            LabError::Input(format!("line {line}: {e}"))
        })?;
        if !(record.theory_scale.is_finite() && record.theory_scale > 0.0) {
            return Err(LabError::Input(format!(
                "trial {}: theory_scale must be positive, got {}",
                record.trial, record.theory_scale
            )));
        }
        record.check_invariants().map_err(|reason| LabError::Violation { reason, record: Box::new(record.clone()) })?;
        records.push(record);
    }
    Ok(records)
}
