//! Single-file, versioned and checksummed store for an [`EisensteinContext`].

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::eisenstein::EisensteinContext;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::modsym::{ModularSymbolSpace, Sign};

pub const CACHE_FORMAT_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEnvelope {
    pub format_version: u64,
    pub checksum: String,
    pub payload: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Payload {
    #[serde(rename = "N")]
    n: u64,
    p: u64,
    sign: Sign,
    sturm_bound: u64,
    /// Basis of the signed cuspidal lattice in relative coordinates.
    signed_basis: IntMatrix,
    star: IntMatrix,
    context: EisensteinContext,
}

pub fn file_name(n: u64, p: u64, sign: Sign, n_max: usize) -> String {
    let s = match sign {
        Sign::Plus => "plus",
        Sign::Minus => "minus",
    };
    format!("context-N{n}-p{p}-{s}-n{n_max}.json")
}

fn checksum(payload: &Value) -> Result<String> {
    let bytes = serde_json::to_vec(payload)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

pub fn envelope(space: &ModularSymbolSpace, ctx: &EisensteinContext) -> Result<CacheEnvelope> {
    let payload = Payload {
        n: ctx.n,
        p: ctx.p,
        sign: ctx.sign,
        sturm_bound: ctx.sturm_bound,
        signed_basis: space.signed(ctx.sign).basis().clone(),
        star: space.star().clone(),
        context: ctx.clone(),
    };
    let payload = serde_json::to_value(payload)?;
    Ok(CacheEnvelope {
        format_version: CACHE_FORMAT_VERSION,
        checksum: checksum(&payload)?,
        payload,
    })
}

pub fn save_context(
    path: &Path,
    space: &ModularSymbolSpace,
    ctx: &EisensteinContext,
) -> Result<()> {
    let env = envelope(space, ctx)?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_vec_pretty(&env)?)?;
    fs::rename(tmp, path)?;
    Ok(())
}

/// Decodes an envelope, checking version, checksum and agreement with the
/// freshly built `space`.
pub fn open_envelope(text: &str, space: &ModularSymbolSpace) -> Result<EisensteinContext> {
    let raw: Value = serde_json::from_str(text)?;
    let found = raw
        .get("format_version")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::CacheFormat("missing format_version".into()))?;
    if found != CACHE_FORMAT_VERSION {
        return Err(Error::CacheVersion {
            found,
            expected: CACHE_FORMAT_VERSION,
        });
    }
    let env: CacheEnvelope =
        serde_json::from_value(raw).map_err(|e| Error::CacheFormat(e.to_string()))?;
    if checksum(&env.payload)? != env.checksum {
        return Err(Error::CacheIntegrity("checksum mismatch".into()));
    }
    let payload: Payload =
        serde_json::from_value(env.payload).map_err(|e| Error::CacheFormat(e.to_string()))?;
    if payload.n != space.level()
        || payload.signed_basis != *space.signed(payload.sign).basis()
        || payload.star != *space.star()
    {
        return Err(Error::CacheIntegrity(
            "cached lattice does not match the modular symbol space".into(),
        ));
    }
    let ctx = payload.context;
    if ctx.n != payload.n || ctx.p != payload.p || ctx.sign != payload.sign {
        return Err(Error::CacheIntegrity(
            "header does not match context".into(),
        ));
    }
    Ok(ctx)
}

pub fn load_context(path: &Path, space: &ModularSymbolSpace) -> Result<EisensteinContext> {
    let text = fs::read_to_string(path)?;
    open_envelope(&text, space).map_err(|e| match e {
        Error::CacheIntegrity(m) => Error::CacheIntegrity(format!("{}: {m}", path.display())),
        e => e,
    })
}
