//! Construction certificates: a base surface (or a stable gluing of
//! genus-zero surfaces) followed by local surgeries on zeros.

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::piece::Piece;
use super::surface::{verify_surface, FlatSurface, PoleRecord, Profile, SurfaceError};
use crate::gauss::GaussianRational as G;
use crate::graphs::StableConfigTree;

/// Genus-zero components, one zero each, joined at simple poles with
/// opposite residues along a tree. Smoothing the nodes produces a genus-zero
/// surface with all the zeros and the original poles and residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableGluing {
    pub tree: StableConfigTree,
    /// Residues at the original poles, indexed by label.
    pub residues: Vec<G>,
    /// One surface per tree component. Labels `0..` follow the component's
    /// original poles and then its node halves.
    pub components: Vec<FlatSurface>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CertificateBase {
    Surface(FlatSurface),
    StableGluing(StableGluing),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Surgery {
    /// Splits zero `zero_id` into zeros of orders `parts`.
    BlowUpZero { zero_id: usize, parts: Vec<u32> },
    /// Adds a handle at zero `zero_id`: genus and order each go up, by 1 and 2.
    SewHandle { zero_id: usize },
}

/// Genus-one base families with a closed form for the rotation number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenusOneFamily {
    /// Horizontal trivial parts in a row closed by a cylinder.
    TypeChain,
    /// Horizontal parts in a cycle, the last one with a self-glued vertical pair.
    SlantedLast,
    /// Horizontal parts in a cycle, with a vertical pair glued across to a `(i;i)` part.
    SlantedPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationClaim {
    pub family: GenusOneFamily,
    pub rotation: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub base: CertificateBase,
    #[serde(default)]
    pub surgeries: Vec<Surgery>,
    pub claimed: Profile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<RotationClaim>,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("stable component {component}: {reason}")]
    Component { component: usize, reason: String },
    #[error("stable tree: {0}")]
    Tree(String),
    #[error("surgery {index} refers to zero {zero_id}, only {count} zeros exist")]
    NoSuchZero { index: usize, zero_id: usize, count: usize },
    #[error("surgery {index}: parts must be positive, at least two, and sum to {order}")]
    BadParts { index: usize, order: u32 },
    #[error("recomputed profile {found:?} differs from the claim {claimed:?}")]
    Mismatch { found: Box<Profile>, claimed: Box<Profile> },
    #[error("rotation claim: {0}")]
    Rotation(String),
}

impl ConstructionCertificate {
    /// Certificate for a surface with no surgeries, claiming what it verifies to.
    pub fn from_surface(surface: FlatSurface) -> Result<Self, CertificateError> {
        let claimed = verify_surface(&surface)?;
        Ok(Self { base: CertificateBase::Surface(surface), surgeries: Vec::new(), claimed, rotation: None })
    }

    pub fn from_stable(gluing: StableGluing) -> Result<Self, CertificateError> {
        let claimed = verify_stable(&gluing)?;
        Ok(Self { base: CertificateBase::StableGluing(gluing), surgeries: Vec::new(), claimed, rotation: None })
    }
}

/// Applies one surgery to a profile. Zero lists stay sorted decreasingly.
pub fn apply_surgery(profile: &mut Profile, index: usize, surgery: &Surgery) -> Result<(), CertificateError> {
    let count = profile.zeros.len();
    match surgery {
        Surgery::BlowUpZero { zero_id, parts } => {
            let order = *profile.zeros.get(*zero_id).ok_or(CertificateError::NoSuchZero { index, zero_id: *zero_id, count })?;
            if parts.len() < 2 || parts.contains(&0) || parts.iter().sum::<u32>() != order {
                return Err(CertificateError::BadParts { index, order });
            }
            profile.zeros.remove(*zero_id);
            profile.zeros.extend(parts);
        }
        Surgery::SewHandle { zero_id } => {
            let z = profile.zeros.get_mut(*zero_id).ok_or(CertificateError::NoSuchZero { index, zero_id: *zero_id, count })?;
            *z += 2;
            profile.genus += 1;
        }
    }
    profile.zeros.sort_unstable_by(|a, b| b.cmp(a));
    Ok(())
}

/// Records a blow-up of zero `zero_id` into `parts` and updates the claim.
pub fn blow_up_zero(
    cert: &ConstructionCertificate,
    zero_id: usize,
    parts: Vec<u32>,
) -> Result<ConstructionCertificate, CertificateError> {
    push(cert, Surgery::BlowUpZero { zero_id, parts })
}

/// Records a handle sewn at zero `zero_id` and updates the claim.
pub fn sew_handle(cert: &ConstructionCertificate, zero_id: usize) -> Result<ConstructionCertificate, CertificateError> {
    push(cert, Surgery::SewHandle { zero_id })
}

fn push(cert: &ConstructionCertificate, surgery: Surgery) -> Result<ConstructionCertificate, CertificateError> {
    let mut out = cert.clone();
    apply_surgery(&mut out.claimed, cert.surgeries.len(), &surgery)?;
    out.surgeries.push(surgery);
    // rotation claims describe the unmodified base only
    out.rotation = None;
    Ok(out)
}

/// Recomputes the base invariants, replays the surgeries and compares with
/// the claim. Rotation claims are checked against the family's index formula.
pub fn verify_certificate(cert: &ConstructionCertificate) -> Result<Profile, CertificateError> {
    let mut profile = match &cert.base {
        CertificateBase::Surface(s) => verify_surface(s)?,
        CertificateBase::StableGluing(g) => verify_stable(g)?,
    };
    if let Some(claim) = &cert.rotation {
        let CertificateBase::Surface(s) = &cert.base else {
            return Err(CertificateError::Rotation("needs an explicit surface".into()));
        };
        if !cert.surgeries.is_empty() {
            return Err(CertificateError::Rotation("only unmodified bases carry a rotation number".into()));
        }
        let orders = profile.zeros.iter().copied().chain(profile.poles.iter().map(|p| p.order)).fold(0u32, |acc, x| acc.gcd(&x));
        if claim.rotation == 0 || orders % claim.rotation != 0 {
            return Err(CertificateError::Rotation(format!("{} does not divide the order gcd {orders}", claim.rotation)));
        }
        let rot = rotation_number(s, &profile, claim.family)?;
        if rot != claim.rotation {
            return Err(CertificateError::Rotation(format!("family gives {rot}, claim is {}", claim.rotation)));
        }
    }
    for (index, surgery) in cert.surgeries.iter().enumerate() {
        apply_surgery(&mut profile, index, surgery)?;
    }
    let mut claimed = cert.claimed.clone();
    claimed.zeros = claimed.sorted_zeros();
    if profile != claimed {
        return Err(CertificateError::Mismatch { found: Box::new(profile), claimed: Box::new(cert.claimed.clone()) });
    }
    Ok(profile)
}

/// Indices of the two standard loops of a genus-one family surface: the
/// first counts the parts crossed vertically, the second adds the types of
/// the parts with a horizontal segment.
pub fn family_indices(surface: &FlatSurface, family: GenusOneFamily) -> Result<(u32, u32), CertificateError> {
    let bad = |m: &str| CertificateError::Rotation(m.to_string());
    let mut horizontal_types = 0u32;
    let mut vertical_parts = 0u32;
    let mut polygons = 0usize;
    let mut shapes = Vec::new();
    for piece in &surface.pieces {
        match piece {
            Piece::PolarPart { tau, top, bottom, order, .. } => {
                let horiz = top.iter().chain(bottom).any(G::is_real);
                let vert = top.iter().chain(bottom).any(|v| v.re().is_zero());
                if horiz {
                    horizontal_types += tau;
                }
                if vert {
                    vertical_parts += 1;
                }
                shapes.push((top.len(), bottom.len(), *order, horiz, vert));
            }
            Piece::Polygon { .. } => polygons += 1,
            Piece::SimplePolePart { .. } => return Err(bad("family surfaces have no simple poles")),
        }
    }
    let plain = |s: &(usize, usize, u32, bool, bool)| s.0 == 1 && s.1 == 1 && s.3 && !s.4;
    let ok = match family {
        GenusOneFamily::TypeChain => polygons == 1 && shapes.iter().all(plain),
        GenusOneFamily::SlantedLast => {
            polygons == 0
                && shapes.iter().all(|s| s.2 == 2)
                && shapes.iter().filter(|s| plain(s)).count() + 1 == shapes.len()
                && shapes.iter().any(|s| s.0 == 2 && s.1 == 2 && s.3 && s.4)
        }
        GenusOneFamily::SlantedPair => {
            polygons == 0
                && shapes.len() % 2 == 1
                && shapes.iter().all(|s| s.2 == 2)
                && shapes.iter().filter(|s| plain(s)).count() + 2 == shapes.len()
                && shapes.iter().any(|s| s.0 == 2 && s.1 == 2 && s.3 && s.4)
                && shapes.iter().any(|s| s.0 == 1 && s.1 == 1 && !s.3 && s.4)
        }
    };
    if !ok {
        return Err(bad("surface does not have the shape of the named family"));
    }
    Ok((vertical_parts, horizontal_types))
}

/// `gcd` of the zero and pole orders and the two loop indices.
pub fn rotation_number(surface: &FlatSurface, profile: &Profile, family: GenusOneFamily) -> Result<u32, CertificateError> {
    if profile.genus != 1 || profile.zeros.len() != 1 {
        return Err(CertificateError::Rotation("families have genus one and a single zero".into()));
    }
    let (a, b) = family_indices(surface, family)?;
    let orders = profile.zeros.iter().copied().chain(profile.poles.iter().map(|p| p.order)).fold(0u32, |acc, x| acc.gcd(&x));
    let rot = orders.gcd(&a).gcd(&b);
    debug_assert!(orders % rot == 0);
    Ok(rot)
}

/// Checks each component, the tree and the node residues, and returns the
/// profile of the smoothed surface.
pub fn verify_stable(g: &StableGluing) -> Result<Profile, CertificateError> {
    let tree = &g.tree;
    let n = tree.components.len();
    if g.components.len() != n || n == 0 {
        return Err(CertificateError::Tree("one surface per component is required".into()));
    }
    if tree.edges.len() + 1 != n {
        return Err(CertificateError::Tree("a tree on k components has k − 1 edges".into()));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for &(a, b) in &tree.edges {
        if a >= n || b >= n {
            return Err(CertificateError::Tree("edge to a missing component".into()));
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(CertificateError::Tree("edges form a cycle".into()));
        }
        parent[ra] = rb;
    }
    let mut seen_pole = vec![false; g.residues.len()];
    let mut halves: Vec<Vec<(usize, G)>> = vec![Vec::new(); tree.edges.len()];
    let mut zeros = Vec::new();
    for (k, (comp, surf)) in tree.components.iter().zip(&g.components).enumerate() {
        let err = |reason: String| CertificateError::Component { component: k, reason };
        let prof = verify_surface(surf).map_err(|e| err(e.to_string()))?;
        if prof.genus != 0 {
            return Err(err("component has positive genus".into()));
        }
        if prof.zeros != vec![comp.zero] {
            return Err(err(format!("zeros {:?}, expected [{}]", prof.zeros, comp.zero)));
        }
        if prof.poles.len() != comp.poles.len() + comp.nodes.len() || prof.poles.iter().any(|p| p.order != 1) {
            return Err(err("components carry simple poles only, one per pole and node half".into()));
        }
        for (j, &pole) in comp.poles.iter().enumerate() {
            if pole >= seen_pole.len() || seen_pole[pole] {
                return Err(err(format!("pole {pole} is missing or repeated")));
            }
            seen_pole[pole] = true;
            if prof.poles[j].residue != g.residues[pole] {
                return Err(err(format!("residue at pole {pole} differs")));
            }
        }
        for (j, half) in comp.nodes.iter().enumerate() {
            let rec = &prof.poles[comp.poles.len() + j];
            if rec.residue != half.residue {
                return Err(err(format!("residue at node {} differs", half.edge)));
            }
            let Some(&(a, b)) = tree.edges.get(half.edge) else {
                return Err(err("node on a missing edge".into()));
            };
            if !((a == k && b == half.neighbor) || (b == k && a == half.neighbor)) {
                return Err(err(format!("node {} does not join this component", half.edge)));
            }
            halves[half.edge].push((k, half.residue.clone()));
        }
        zeros.push(comp.zero);
    }
    if seen_pole.iter().any(|s| !s) {
        return Err(CertificateError::Tree("some pole is carried by no component".into()));
    }
    for (e, h) in halves.iter().enumerate() {
        if h.len() != 2 || h[0].0 == h[1].0 || h[0].1 != -&h[1].1 {
            return Err(CertificateError::Tree(format!("node {e} needs two halves with opposite residues")));
        }
    }
    zeros.sort_unstable_by(|a, b| b.cmp(a));
    let poles = g.residues.iter().map(|r| PoleRecord { order: 1, residue: r.clone() }).collect();
    Ok(Profile { genus: 0, zeros, poles })
}
