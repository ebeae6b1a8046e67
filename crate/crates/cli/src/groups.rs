//! Built-in permutation groups for the `genset` and `synth` subcommands.

use anyhow::{bail, Context, Result};
use zukgap_core::genset::{genset_from_permutations, rotation, transposition, GensetMode, Permutation, PermutationSet};

/// How to pick the generators and `S`.
#[derive(Clone, Debug, Default)]
pub struct GroupSpec {
    /// `s3` or `z<n>`.
    pub group: Option<String>,
    /// Rotation amounts for `z<n>`; `S` becomes these rotations and their
    /// inverses.
    pub rotations: Vec<usize>,
    /// Explicit generators as comma-separated image lists.
    pub perms: Vec<String>,
    /// Take `S` as the supplied generators plus inverses instead of all
    /// non-identity elements.
    pub given: bool,
}

fn parse_perm(text: &str) -> Result<Permutation> {
    let images = text
        .split(',')
        .map(|x| x.trim().parse::<usize>().with_context(|| format!("bad image `{x}` in `{text}`")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Permutation::new(images)?)
}

fn cyclic_order(name: &str) -> Option<usize> {
    name.strip_prefix('z').or_else(|| name.strip_prefix('Z')).and_then(|n| n.parse().ok())
}

pub fn build(spec: &GroupSpec) -> Result<PermutationSet> {
    let mode = if spec.given || !spec.rotations.is_empty() {
        GensetMode::GivenPlusInverses
    } else {
        GensetMode::AllNonIdentity
    };
    let generators: Vec<Permutation> = match (&spec.group, spec.perms.is_empty()) {
        (Some(_), false) => bail!("use either --group or --perm, not both"),
        (None, true) => bail!("one of --group or --perm is required"),
        (None, false) => spec.perms.iter().map(|p| parse_perm(p)).collect::<Result<_>>()?,
        (Some(g), true) => {
            let g = g.to_ascii_lowercase();
            if g == "s3" {
                if !spec.rotations.is_empty() {
                    bail!("--rotations needs a cyclic group");
                }
                vec![transposition(3, 0, 1), rotation(3, 1)]
            } else if let Some(n) = cyclic_order(&g) {
                if n < 2 {
                    bail!("cyclic group needs n >= 2");
                }
                if spec.rotations.is_empty() {
                    vec![rotation(n, 1)]
                } else {
                    spec.rotations.iter().map(|&k| rotation(n, k % n)).collect()
                }
            } else {
                bail!("unknown group `{g}` (expected s3 or z<n>)");
            }
        }
    };
    Ok(genset_from_permutations(&generators, mode)?)
}
