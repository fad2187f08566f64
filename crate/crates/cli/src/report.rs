use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Definite,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Definite => 0,
            Status::Inconclusive => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Definite => "definite",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_sha256: String,
    pub options: Value,
    pub result: Value,
    pub caveats: Vec<String>,
    pub status: Status,
}

impl Report {
    pub fn new(
        command: &str,
        input: &[u8],
        options: Value,
        result: Value,
        caveats: Vec<String>,
        status: Status,
    ) -> Self {
        Report {
            command: command.to_string(),
            input_sha256: hex::encode(Sha256::digest(input)),
            options,
            result,
            caveats,
            status,
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "input_sha256": self.input_sha256,
            "options": self.options,
            "status": self.status.name(),
            "result": self.result,
            "caveats": self.caveats,
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out =
            serde_json::to_string_pretty(&self.to_value()).expect("JSON values serialize");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} [{}]\n", self.command, self.status.name());
        flatten(&mut out, "", &self.result);
        for c in &self.caveats {
            out.push_str(&format!("note: {c}\n"));
        }
        out
    }
}

fn flatten(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(out, &key, x);
            }
        }
        Value::Array(xs) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
