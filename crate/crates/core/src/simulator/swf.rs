//! Standard Workload Format traces.
//!
//! Comment lines start with `;`. Every data line has at least 18
//! whitespace-separated fields; the ones used here are (1-based) job number
//! (1), submit time (2), run time (4), allocated processors (5) and
//! requested processors (8), the latter used when field 5 is not positive.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Job {
    pub id: u64,
    pub submit_time: u64,
    pub run_time: u64,
    pub procs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trace {
    /// Ordered by `(submit_time, id)`.
    pub jobs: Vec<Job>,
    pub source: String,
    pub scale_divisor: usize,
    /// Data lines dropped for a nonpositive run time or processor count.
    pub skipped: usize,
}

const MIN_FIELDS: usize = 18;

fn field(fields: &[&str], n: usize, line: usize) -> Result<i64> {
    let raw = fields[n - 1];
    raw.parse::<i64>()
        .or_else(|_| raw.parse::<f64>().map(|v| v as i64).map_err(|_| ()))
        .map_err(|_| Error::Parse { line, message: format!("field {n} is not a number: '{raw}'") })
}

pub fn parse_swf(text: &str, source: &str) -> Result<Trace> {
    let mut jobs = Vec::new();
    let mut skipped = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with(';') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() < MIN_FIELDS {
            return Err(Error::Parse {
                line,
                message: format!("expected at least {MIN_FIELDS} fields, found {}", fields.len()),
            });
        }
        let id = field(&fields, 1, line)?;
        let submit = field(&fields, 2, line)?;
        let run = field(&fields, 4, line)?;
        let mut procs = field(&fields, 5, line)?;
        if procs <= 0 {
            procs = field(&fields, 8, line)?;
        }
        if run <= 0 || procs <= 0 || submit < 0 || id < 0 {
            skipped += 1;
            continue;
        }
        jobs.push(Job {
            id: id as u64,
            submit_time: submit as u64,
            run_time: run as u64,
            procs: procs as usize,
        });
    }
    jobs.sort_by_key(|j| (j.submit_time, j.id));
    Ok(Trace { jobs, source: source.to_string(), scale_divisor: 1, skipped })
}

impl Trace {
    pub fn from_file(path: &std::path::Path) -> Result<Trace> {
        let text = std::fs::read_to_string(path)?;
        parse_swf(&text, &path.display().to_string())
    }

    /// Divides every processor count by `divisor`, rounding up.
    pub fn scaled(mut self, divisor: usize) -> Result<Trace> {
        if divisor == 0 {
            return Err(Error::invalid("scale divisor must be positive"));
        }
        for job in &mut self.jobs {
            job.procs = job.procs.div_ceil(divisor);
        }
        self.scale_divisor *= divisor;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = "1 0 10 600 32 -1 -1 32 900 -1 1 1 1 1 1 -1 -1 -1";

    #[test]
    fn comments_and_fields() {
        let text = format!("; comment\n;another\n\n{LINE}\n");
        let t = parse_swf(&text, "x.swf").unwrap();
        assert_eq!(t.jobs, vec![Job { id: 1, submit_time: 0, run_time: 600, procs: 32 }]);
        assert_eq!(t.skipped, 0);
        assert!(parse_swf("; only a comment\n", "c").unwrap().jobs.is_empty());
    }

    #[test]
    fn requested_processor_fallback() {
        let t = parse_swf("2 5 0 100 -1 -1 -1 16 -1 -1 1 1 1 1 1 -1 -1 -1", "f").unwrap();
        assert_eq!(t.jobs[0].procs, 16);
        let t = parse_swf("3 5 0 100 -1 -1 -1 -1 -1 -1 1 1 1 1 1 -1 -1 -1", "f").unwrap();
        assert!(t.jobs.is_empty());
        assert_eq!(t.skipped, 1);
        let t = parse_swf("4 5 0 0 8 -1 -1 8 -1 -1 1 1 1 1 1 -1 -1 -1", "f").unwrap();
        assert_eq!(t.skipped, 1);
    }

    #[test]
    fn malformed_lines_report_their_number() {
        let err = parse_swf(&format!("{LINE}\n1 2 3\n"), "bad").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_swf("; c\n1 x 10 600 32 -1 -1 32 900 -1 1 1 1 1 1 -1 -1 -1", "bad").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn fractional_fields_and_ordering() {
        let text = "7 100.0 0 50.5 4 -1 -1 4 -1 -1 1 1 1 1 1 -1 -1 -1\n\
                    6 100 0 20 2 -1 -1 2 -1 -1 1 1 1 1 1 -1 -1 -1\n\
                    9 3 0 20 2 -1 -1 2 -1 -1 1 1 1 1 1 -1 -1 -1";
        let t = parse_swf(text, "f").unwrap();
        let ids: Vec<u64> = t.jobs.iter().map(|j| j.id).collect();
        assert_eq!(ids, vec![9, 6, 7]);
        assert_eq!(t.jobs[2].run_time, 50);
    }

    #[test]
    fn scaling_rounds_up() {
        let t = parse_swf(LINE, "f").unwrap().scaled(5).unwrap();
        assert_eq!(t.jobs[0].procs, 7);
        assert_eq!(t.scale_divisor, 5);
        assert!(parse_swf(LINE, "f").unwrap().scaled(0).is_err());
    }
}
