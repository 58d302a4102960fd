use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Ok,
    Pass,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub name: String,
    pub value: Value,
}

/// Outcome of one invocation. Everything except `timing_ms` is a pure
/// function of the input bytes and flags.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub status: Status,
    pub results: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs: &[&[u8]]) -> Self {
        RunReport {
            command: command.into(),
            input_digest: digest(inputs),
            status: Status::Ok,
            results: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, value: impl Into<Value>) {
        self.results.push(Entry {
            name: name.into(),
            value: value.into(),
        });
    }

    pub fn verdict(&mut self, ok: bool) {
        self.status = if ok { Status::Pass } else { Status::Fail };
    }

    pub fn render_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_human(&self) -> String {
        let mut out = format!("command: {}\ninput: {}\n", self.command, self.input_digest);
        for entry in &self.results {
            match &entry.value {
                Value::String(s) => out.push_str(&format!("{}: {s}\n", entry.name)),
                Value::Array(items) if items.is_empty() => {
                    out.push_str(&format!("{}: (none)\n", entry.name))
                }
                Value::Array(items) if items.iter().all(|v| !v.is_object()) => {
                    out.push_str(&format!("{}:\n", entry.name));
                    for item in items {
                        out.push_str(&format!("  {}\n", plain(item)));
                    }
                }
                other => out.push_str(&format!("{}: {}\n", entry.name, plain(other))),
            }
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("time: {ms} ms\n"));
        }
        out.push_str(&format!("status: {}\n", self.status.label()));
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

/// `sha256:` followed by the hex digest of the length-prefixed inputs.
pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}
