use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// One input as read: its name on the command line and its content.
pub struct Input {
    pub name: String,
    pub text: String,
}

impl Input {
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.text.as_bytes()))
    }
}

/// What a subcommand computed.
pub struct Outcome {
    pub results: Value,
    pub verdicts: Value,
    pub text: Vec<String>,
}

pub struct RunReport {
    pub command: &'static str,
    pub inputs: Vec<(String, String)>,
    pub outcome: Outcome,
    pub timing_ms: Option<f64>,
}

impl RunReport {
    /// Keys are sorted, so identical inputs give identical bytes unless
    /// timing was requested.
    pub fn to_json(&self) -> Value {
        let inputs: Vec<Value> = self
            .inputs
            .iter()
            .map(|(name, sha)| json!({ "name": name, "sha256": sha }))
            .collect();
        json!({
            "command": self.command,
            "inputs": inputs,
            "results": self.outcome.results,
            "verdicts": self.outcome.verdicts,
            "timing": self.timing_ms.map(|ms| json!({ "ms": ms })),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for (name, sha) in &self.inputs {
            out.push_str(&format!("  input {name} sha256:{}\n", &sha[..16]));
        }
        for l in &self.outcome.text {
            out.push_str(l);
            out.push('\n');
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("time {ms:.1} ms\n"));
        }
        out
    }
}
