//! Empirical constants `seed_count / theory_scale` from sweep output.

use std::fmt::Write as _;

use revcascade::parse_rho;
use revcascade::Fraction;

use crate::error::LabError;
use crate::record::ExperimentRecord;

#[derive(Debug, Clone, PartialEq)]
pub struct FitGroup {
    pub generator: String,
    pub seeder: String,
    pub rows: usize,
    pub max_ratio: f64,
    pub median_ratio: f64,
    /// `max_ratio` is above the configured ceiling.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub ceiling: Option<f64>,
    pub groups: Vec<FitGroup>,
}

pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

fn max(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Groups by `(generator, seeder)` in order of first appearance.
pub fn fit(records: &[ExperimentRecord], ceiling: Option<f64>) -> FitReport {
    let mut keys: Vec<(&str, &str)> = Vec::new();
    for r in records {
        let key = (r.generator.as_str(), r.seeder.as_str());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    let groups = keys
        .into_iter()
        .map(|(generator, seeder)| {
            let mut ratios: Vec<f64> = records
                .iter()
                .filter(|r| r.generator == generator && r.seeder == seeder)
                .map(ExperimentRecord::ratio)
                .collect();
            let max_ratio = max(&ratios);
            FitGroup {
                generator: generator.to_string(),
                seeder: seeder.to_string(),
                rows: ratios.len(),
                max_ratio,
                median_ratio: median(&mut ratios),
                flagged: ceiling.is_some_and(|c| max_ratio > c),
            }
        })
        .collect();
    FitReport { ceiling, groups }
}

impl FitReport {
    pub fn any_flagged(&self) -> bool {
        self.groups.iter().any(|g| g.flagged)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for g in &self.groups {
            let _ = write!(
                out,
                "{} {} rows {} max {:.4} median {:.4}",
                g.generator, g.seeder, g.rows, g.max_ratio, g.median_ratio
            );
            if g.flagged {
                let _ = write!(out, " EXCEEDS ceiling {}", self.ceiling.unwrap_or(f64::NAN));
            }
            out.push('\n');
        }
        out
    }
}

fn vertex_count(params: &str) -> Option<usize> {
    params.split(';').find_map(|kv| kv.strip_prefix("n=")).and_then(|n| n.parse().ok())
}

/// Plot data: one block per `(generator, seeder, n)`, introduced by a `#`
/// comment and separated by two blank lines. Each line is
/// `rho median_ratio max_ratio` with `rho` ascending.
pub fn plot_data(records: &[ExperimentRecord]) -> Result<String, LabError> {
    type Key = (String, String, usize);
    let mut blocks: Vec<(Key, Vec<(f64, f64)>)> = Vec::new();
    for r in records {
        let n = vertex_count(&r.params)
            .ok_or_else(|| LabError::Input(format!("trial {}: params `{}` lack `n=`", r.trial, r.params)))?;
        let rho = parse_rho(&r.rho).map_err(|e| LabError::Input(format!("trial {}: {e}", r.trial)))?.to_f64();
        let key = (r.generator.clone(), r.seeder.clone(), n);
        match blocks.iter_mut().find(|(k, _)| *k == key) {
            Some((_, points)) => points.push((rho, r.ratio())),
            None => blocks.push((key, vec![(rho, r.ratio())])),
        }
    }
    let mut out = String::new();
    for (i, ((generator, seeder, n), mut points)) in blocks.into_iter().enumerate() {
        if i > 0 {
            out.push_str("\n\n");
        }
        let _ = writeln!(out, "# {generator} {seeder} n={n}");
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        for chunk in points.chunk_by(|a, b| a.0 == b.0) {
            let mut ys: Vec<f64> = chunk.iter().map(|p| p.1).collect();
            let hi = max(&ys);
            let _ = writeln!(out, "{} {} {}", chunk[0].0, median(&mut ys), hi);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(generator: &str, params: &str, rho: &str, seed_count: usize, theory_scale: f64) -> ExperimentRecord {
        ExperimentRecord {
            trial: 0,
            generator: generator.into(),
            params: params.into(),
            rho: rho.into(),
            seeder: "explicit".into(),
            seed_count,
            budget: seed_count,
            theory_scale,
            rounds_to_full: None,
            monotone: true,
            rng_seed: 0,
        }
    }

    #[test]
    fn single_row_constant() {
        let report = fit(&[row("er", "n=10;p=1", "1/2", 7, 3.5)], None);
        assert_eq!(report.groups.len(), 1);
        assert_eq!(report.groups[0].max_ratio, 2.0);
        assert_eq!(report.groups[0].median_ratio, 2.0);
        assert_eq!(report.render(), "er explicit rows 1 max 2.0000 median 2.0000\n");
    }

    #[test]
    fn medians_and_ceilings() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
        let rows = [
            row("er", "n=10;p=1", "1/2", 1, 1.0),
            row("circulant", "n=10;d=2", "1/2", 9, 1.0),
            row("er", "n=10;p=1", "1/2", 3, 1.0),
        ];
        let report = fit(&rows, Some(5.0));
        assert_eq!(report.groups.iter().map(|g| g.generator.as_str()).collect::<Vec<_>>(), ["er", "circulant"]);
        assert_eq!(report.groups[0].median_ratio, 2.0);
        assert!(!report.groups[0].flagged && report.groups[1].flagged);
        assert!(report.any_flagged());
        assert!(report.render().contains("circulant explicit rows 1 max 9.0000 median 9.0000 EXCEEDS ceiling 5"));
    }

    #[test]
    fn plot_blocks_per_n() {
        let rows = [
            row("er", "n=10;mult=2", "1/2", 4, 1.0),
            row("er", "n=10;mult=2", "1/4", 2, 1.0),
            row("er", "n=20;mult=2", "1/2", 3, 1.0),
            row("er", "n=10;mult=2", "1/2", 6, 1.0),
        ];
        assert_eq!(
            plot_data(&rows).unwrap(),
            "# er explicit n=10\n0.25 2 2\n0.5 5 6\n\n\n# er explicit n=20\n0.5 3 3\n"
        );
        assert!(plot_data(&[row("er", "p=1", "1/2", 1, 1.0)]).is_err());
    }
}
