use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bumped whenever the layout of cached results changes.
const CACHE_FORMAT: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupArgs {
    pub m: u32,
    pub r: u32,
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Specialized,
    Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum IdealKind {
    /// Subspace-arrangement ideal `I_i^{(m)}`.
    #[value(name = "I", alias = "i")]
    I,
    /// Squarefree monomials of degree `i`.
    #[value(name = "T", alias = "t")]
    T,
    /// Candidate generators of `J` for `G(m,m,n)`, trivial `τ`.
    #[value(name = "J", alias = "j")]
    J,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LmodJob {
    pub group: GroupArgs,
    pub p: u64,
    pub tau: String,
    pub hbar: u8,
    pub mode: Mode,
    pub seeds: Vec<u64>,
    pub cap: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdealJob {
    pub kind: IdealKind,
    pub i: usize,
    pub m: u32,
    pub n: usize,
    pub p: u64,
    pub dmax: u32,
}

/// Canonical description of one computation. Its digest keys the cache.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Job {
    Lmod(LmodJob),
    Dunkl {
        group: GroupArgs,
        p: u64,
        tau: String,
        hbar: u8,
        seed: u64,
        vector: Vec<String>,
    },
    Arr(IdealJob),
    BettiIdeal(IdealJob),
    BettiL {
        lmod: LmodJob,
        dmax: Option<u32>,
    },
    Transition {
        m: u32,
        p: u64,
        dmax: u32,
        seed: u64,
    },
    Degen {
        group: GroupArgs,
        tau: String,
        p: u64,
        seeds: Vec<u64>,
    },
    Koszul {
        p: u64,
        budget: u32,
        seeds: Vec<u64>,
        matrices: serde_json::Value,
    },
}

impl Job {
    pub fn canonical(&self) -> String {
        serde_json::to_string(&(CACHE_FORMAT, self)).expect("serializable")
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}
