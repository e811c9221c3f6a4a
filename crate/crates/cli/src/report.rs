use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

/// Everything a command printed, plus its exit code.
#[derive(Debug)]
pub struct Outcome {
    pub exit: u8,
    pub text: String,
    pub result: Value,
}

impl Outcome {
    pub fn new(exit: u8, text: String, result: impl Serialize) -> Self {
        Outcome {
            exit,
            text,
            result: serde_json::to_value(result).expect("report payloads serialize"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
}

/// SHA-256 over the command inputs, each prefixed with its length so that
/// distinct splits never collide.
#[derive(Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn add(&mut self, bytes: &[u8]) {
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
    }

    pub fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}
