use std::fmt::Write as _;

use serde::Serialize;
use tmdd::mdd::FamilyCount;

#[derive(Debug, Default, Serialize)]
pub struct HostSummary {
    pub n: usize,
    pub m: usize,
    pub frontier_width: usize,
}

#[derive(Debug, Serialize)]
pub struct ProfileSummary {
    pub query: String,
    pub colors: usize,
    pub s: usize,
    pub t: usize,
}

#[derive(Debug, Default, Serialize)]
pub struct DdSummary {
    pub nodes: usize,
    pub width: usize,
    pub levels: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub host: HostSummary,
    pub profiles: Vec<ProfileSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dd: Option<DdSummary>,
    /// Exact decimal count, omitted above 10^18.
    pub count: Option<String>,
    pub count_sci: String,
    pub seconds: f64,
    #[serde(skip)]
    pub members: Vec<Vec<usize>>,
    #[serde(skip)]
    pub show_levels: bool,
}

impl RunReport {
    pub fn new(command: &str, host: HostSummary, count: &FamilyCount, seconds: f64) -> Self {
        let limit = FamilyCount::from(1_000_000_000_000_000_000);
        Self {
            command: command.to_string(),
            host,
            profiles: Vec::new(),
            dd: None,
            count: (*count <= limit).then(|| count.to_string()),
            count_sci: count.to_scientific(3),
            seconds,
            members: Vec::new(),
            show_levels: false,
        }
    }

    /// Line-oriented `key: value` rendering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let h = &self.host;
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "host: n={} m={} w={}", h.n, h.m, h.frontier_width);
        for p in &self.profiles {
            let _ = writeln!(s, "profile: {} c={} |s|={} |t|={}", p.query, p.colors, p.s, p.t);
        }
        if let Some(dd) = &self.dd {
            let _ = writeln!(s, "nodes: {}", dd.nodes);
            let _ = writeln!(s, "width: {}", dd.width);
            if self.show_levels {
                let levels: Vec<String> = dd.levels.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "levels: {}", levels.join(" "));
            }
        }
        if let Some(c) = &self.count {
            let _ = writeln!(s, "count: {c}");
        }
        let _ = writeln!(s, "count_sci: {}", self.count_sci);
        let _ = writeln!(s, "time_s: {:.3}", self.seconds);
        for m in &self.members {
            let ids: Vec<String> = m.iter().map(|i| (i + 1).to_string()).collect();
            let _ = writeln!(s, "{}", ids.join(" "));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serialises");
        if !self.members.is_empty() {
            let one_based: Vec<Vec<usize>> = self
                .members
                .iter()
                .map(|m| m.iter().map(|i| i + 1).collect())
                .collect();
            v["members"] = serde_json::json!(one_based);
        }
        serde_json::to_string_pretty(&v).expect("json")
    }
}
