use super::spec::GroupSpec;
use super::{FiniteGroup, GroupError};

pub const DEFAULT_MAX_ORDER: u64 = 2000;

pub fn realize(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    realize_with_limit(spec, DEFAULT_MAX_ORDER)
}

pub fn realize_with_limit(spec: &GroupSpec, max_order: u64) -> Result<FiniteGroup, GroupError> {
    let order = spec.order().ok_or(GroupError::Overflow)?;
    if order > max_order {
        return Err(GroupError::TooLarge {
            order,
            max: max_order,
        });
    }
    let description = spec.to_string();
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n as usize, description),
        GroupSpec::Homocyclic {
            prime,
            exponent,
            rank,
        } => {
            let q = prime.pow(*exponent) as usize;
            let factors = vec![additive_cyclic(q)?; *rank as usize];
            product_of(&factors, description)
        }
        GroupSpec::Abelian(ds) => {
            let factors = ds
                .iter()
                .map(|&d| additive_cyclic(d as usize))
                .collect::<Result<Vec<_>, _>>()?;
            product_of(&factors, description)
        }
        GroupSpec::Symmetric(n) => symmetric(*n as usize, description),
        GroupSpec::Dihedral(n) => dihedral(*n as usize, description),
        GroupSpec::Quaternion => quaternion(),
        GroupSpec::Product(a, b) => {
            let a = realize_with_limit(a, max_order)?;
            let b = realize_with_limit(b, max_order)?;
            product_of(&[a, b], description)
        }
    }
}

/// External direct product with lexicographic element order; labels are
/// coordinate tuples of the factor labels.
pub fn direct_product(
    factors: &[FiniteGroup],
    description: impl Into<String>,
) -> Result<FiniteGroup, GroupError> {
    product_of(factors, description.into())
}

fn cyclic(n: usize, description: String) -> Result<FiniteGroup, GroupError> {
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    FiniteGroup::from_table(cyclic_table(n), labels, description)
}

fn additive_cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    let labels = (0..n).map(|k| k.to_string()).collect();
    FiniteGroup::from_table(cyclic_table(n), labels, format!("Z({n})"))
}

fn cyclic_table(n: usize) -> Vec<u32> {
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push(((i + j) % n) as u32);
        }
    }
    table
}

fn product_of(factors: &[FiniteGroup], description: String) -> Result<FiniteGroup, GroupError> {
    let sizes: Vec<usize> = factors.iter().map(FiniteGroup::size).collect();
    let size = sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .ok_or(GroupError::Overflow)?;
    let coords = |mut x: usize| -> Vec<usize> {
        let mut c = vec![0; sizes.len()];
        for (slot, &s) in c.iter_mut().zip(&sizes).rev() {
            *slot = x % s;
            x /= s;
        }
        c
    };
    let all_coords: Vec<Vec<usize>> = (0..size).map(coords).collect();
    let mut table = Vec::with_capacity(size * size);
    for cx in &all_coords {
        for cy in &all_coords {
            let mut z = 0;
            for (k, f) in factors.iter().enumerate() {
                z = z * sizes[k] + f.mul(cx[k], cy[k]);
            }
            table.push(z as u32);
        }
    }
    let labels = all_coords
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().zip(factors).map(|(&i, f)| f.label(i)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    FiniteGroup::from_table(table, labels, description)
}

fn symmetric(n: usize, description: String) -> Result<FiniteGroup, GroupError> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        perms.push(current.clone());
        if !next_permutation(&mut current) {
            break;
        }
    }
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let size = perms.len();
    let mut table = Vec::with_capacity(size * size);
    let mut composed = vec![0; n];
    for s in &perms {
        for t in &perms {
            // (s t)(x) = s(t(x))
            for x in 0..n {
                composed[x] = s[t[x]];
            }
            table.push(index(&composed) as u32);
        }
    }
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_table(table, labels, description)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

/// Order `2n`; element `r^k s^f` has index `f * n + k`.
fn dihedral(n: usize, description: String) -> Result<FiniteGroup, GroupError> {
    let size = 2 * n;
    let mut table = Vec::with_capacity(size * size);
    for x in 0..size {
        let (fx, kx) = (x / n, x % n);
        for y in 0..size {
            let (fy, ky) = (y / n, y % n);
            // s r^k = r^-k s
            let k = if fx == 0 { kx + ky } else { kx + n - ky } % n;
            table.push(((fx ^ fy) * n + k) as u32);
        }
    }
    let labels = (0..size)
        .map(|x| {
            let (f, k) = (x / n, x % n);
            let r = match k {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{k}"),
            };
            match (f, r.is_empty()) {
                (0, true) => "e".to_string(),
                (0, false) => r,
                _ => format!("{r}s"),
            }
        })
        .collect();
    FiniteGroup::from_table(table, labels, description)
}

/// Elements in index order: 1, -1, i, -i, j, -j, k, -k.
fn quaternion() -> Result<FiniteGroup, GroupError> {
    // unit products over {1, i, j, k} as (sign, unit)
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let decode = |x: usize| (x % 2 == 1, x / 2);
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        let (sx, ux) = decode(x);
        for y in 0..8 {
            let (sy, uy) = decode(y);
            let (s, u) = UNIT[ux][uy];
            let neg = sx ^ sy ^ s;
            table.push((2 * u + usize::from(neg)) as u32);
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_table(table, labels, "Q8")
}
