use std::collections::BTreeMap;

use quadrimm_core::io::sha256_hex;
use quadrimm_core::Error;

/// Result of one subcommand before rendering.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    /// Canonical codes of produced objects, in output order.
    pub codes: Vec<String>,
    pub parameters: BTreeMap<String, String>,
    pub input_digests: BTreeMap<String, String>,
    /// Contents of files written with `-o`, by path.
    pub files: BTreeMap<String, String>,
    pub status: u8,
}

impl Outcome {
    pub fn new(text: String) -> Self {
        Outcome {
            text,
            json: serde_json::Value::Null,
            codes: Vec::new(),
            parameters: BTreeMap::new(),
            input_digests: BTreeMap::new(),
            files: BTreeMap::new(),
            status: 0,
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.json).expect("json value") + "\n"
        } else {
            self.text.clone()
        }
    }

    /// Digest of standard output followed by every written file.
    pub fn digest(&self, rendered: &str) -> String {
        let mut all = rendered.to_string();
        for (path, body) in &self.files {
            all.push_str(&format!("\0{path}\0{body}"));
        }
        sha256_hex(all.as_bytes())
    }
}

/// 2 for validation failures and counterexamples, 3 for rejected inputs,
/// 4 for budget refusals, 1 for anything else.
pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Budget(_)) => 4,
        Some(Error::Counterexample(_)) => 2,
        Some(Error::Io { .. }) => 1,
        Some(_) => 3,
        None => 1,
    }
}
