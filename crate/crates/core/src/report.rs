//! Ordered verification reports and their text/TSV renderings.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

/// A check carries a status; a note records a finding without one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ItemKind {
    Check(Status),
    Note,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportItem {
    pub suite: String,
    pub name: String,
    pub kind: ItemKind,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    items: Vec<ReportItem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Tsv,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, suite: &str, name: &str, ok: bool, detail: impl Into<String>) {
        self.items.push(ReportItem {
            suite: suite.to_string(),
            name: name.to_string(),
            kind: ItemKind::Check(Status::from_bool(ok)),
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, suite: &str, name: &str, detail: impl Into<String>) {
        self.items.push(ReportItem { suite: suite.to_string(), name: name.to_string(), kind: ItemKind::Note, detail: detail.into() });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.items.extend(other.items);
    }

    pub fn items(&self) -> &[ReportItem] {
        &self.items
    }

    pub fn checks(&self) -> impl Iterator<Item = (&ReportItem, Status)> {
        self.items.iter().filter_map(|i| match i.kind {
            ItemKind::Check(s) => Some((i, s)),
            ItemKind::Note => None,
        })
    }

    pub fn notes(&self) -> impl Iterator<Item = &ReportItem> {
        self.items.iter().filter(|i| i.kind == ItemKind::Note)
    }

    pub fn find(&self, suite: &str, name: &str) -> Option<&ReportItem> {
        self.items.iter().find(|i| i.suite == suite && i.name == name)
    }

    pub fn summary(&self) -> Summary {
        let (mut pass, mut fail) = (0, 0);
        for (_, s) in self.checks() {
            match s {
                Status::Pass => pass += 1,
                Status::Fail => fail += 1,
            }
        }
        Summary { total: pass + fail, pass, fail }
    }

    pub fn all_pass(&self) -> bool {
        self.summary().fail == 0
    }

    /// Renders the report. Text lines are `CHECK <suite>.<name> <PASS|FAIL> <detail>`
    /// or `NOTE <suite>.<name> <detail>`, followed by one `SUMMARY` line; TSV
    /// carries the same fields separated by tabs.
    pub fn emit(&self, format: Format) -> String {
        let mut out = String::new();
        for item in &self.items {
            let detail = item.detail.replace(['\n', '\t'], " ");
            match (format, &item.kind) {
                (Format::Text, ItemKind::Check(s)) => {
                    let _ = writeln!(out, "CHECK {}.{} {} {}", item.suite, item.name, s.as_str(), detail);
                }
                (Format::Text, ItemKind::Note) => {
                    let _ = writeln!(out, "NOTE {}.{} {}", item.suite, item.name, detail);
                }
                (Format::Tsv, ItemKind::Check(s)) => {
                    let _ = writeln!(out, "CHECK\t{}\t{}\t{}\t{}", item.suite, item.name, s.as_str(), detail);
                }
                (Format::Tsv, ItemKind::Note) => {
                    let _ = writeln!(out, "NOTE\t{}\t{}\tNOTE\t{}", item.suite, item.name, detail);
                }
            }
        }
        let s = self.summary();
        match format {
            Format::Text => {
                let _ = writeln!(out, "SUMMARY total={} pass={} fail={}", s.total, s.pass, s.fail);
            }
            Format::Tsv => {
                let _ = writeln!(out, "SUMMARY\t{}\t{}\t{}", s.total, s.pass, s.fail);
            }
        }
        out
    }
}
