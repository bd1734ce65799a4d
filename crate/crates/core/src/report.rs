//! Structured pass/fail records.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "FAIL",
            ClaimStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub status: ClaimStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub algebra: String,
    pub p: u32,
    pub eps: Option<u32>,
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn new(algebra: &str, p: u32, eps: Option<u32>) -> Self {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            algebra: algebra.into(),
            p,
            eps,
            claims: Vec::new(),
        }
    }

    /// Record a claim. A later claim with the same id replaces the earlier
    /// one, so every id appears once.
    pub fn push(&mut self, id: impl Into<String>, status: ClaimStatus, witness: Option<String>) {
        let id = id.into();
        let claim = Claim {
            id,
            status,
            witness,
        };
        match self
            .claims
            .binary_search_by(|c| c.id.as_str().cmp(claim.id.as_str()))
        {
            Ok(i) => self.claims[i] = claim,
            Err(i) => self.claims.insert(i, claim),
        }
    }

    pub fn pass(&mut self, id: impl Into<String>, witness: Option<String>) {
        self.push(id, ClaimStatus::Pass, witness);
    }

    pub fn fail(&mut self, id: impl Into<String>, witness: String) {
        self.push(id, ClaimStatus::Fail, Some(witness));
    }

    pub fn skip(&mut self, id: impl Into<String>, reason: String) {
        self.push(id, ClaimStatus::Skipped, Some(reason));
    }

    /// Pass if `ok`, otherwise fail with the witness.
    pub fn check(&mut self, id: impl Into<String>, ok: bool, witness: String) {
        if ok {
            self.push(id, ClaimStatus::Pass, Some(witness));
        } else {
            self.push(id, ClaimStatus::Fail, Some(witness));
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for c in other.claims {
            self.push(c.id, c.status, c.witness);
        }
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims
            .binary_search_by(|c| c.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.claims[i])
    }

    pub fn count(&self, status: ClaimStatus) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    /// True iff no claim failed.
    pub fn all_passed(&self) -> bool {
        self.count(ClaimStatus::Fail) == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.status == ClaimStatus::Fail)
    }

    pub fn header(&self) -> String {
        match self.eps {
            Some(e) => format!("{} (p = {}, eps = {})", self.algebra, self.p, e),
            None => format!("{} (p = {})", self.algebra, self.p),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header())?;
        for c in &self.claims {
            write!(f, "  [{:>7}] {}", c.status, c.id)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "  {} passed, {} failed, {} skipped",
            self.count(ClaimStatus::Pass),
            self.count(ClaimStatus::Fail),
            self.count(ClaimStatus::Skipped)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claims_stay_sorted_and_unique() {
        let mut r = VerificationReport::new("g_3", 3, None);
        r.pass("th1.b", None);
        r.fail("th1.a", "x".into());
        r.pass("th1.a", None);
        let ids: Vec<&str> = r.claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["th1.a", "th1.b"]);
        assert!(r.all_passed());
        r.skip("th1.c", "later".into());
        assert_eq!(r.count(ClaimStatus::Skipped), 1);
        assert!(r.get("th1.c").is_some());
    }
}
