//! Built-in scenarios.

use casimir_core::MethodChoice;

use crate::config::{GridKind, PlateSpec, RunConfig, SweepSpec};

use PlateSpec::{FreeSigma as Free, Graphene as G, PerfectElectric as PE, PerfectMagnetic as PM};

pub struct Preset {
    pub name: String,
    pub description: String,
    pub stacks: Vec<RunConfig>,
}

fn fixed(name: &str, plates: Vec<PlateSpec>) -> RunConfig {
    RunConfig {
        name: Some(name.to_string()),
        plates,
        ..RunConfig::default()
    }
}

fn swept(name: &str, plates: Vec<PlateSpec>, start: f64, points: usize) -> RunConfig {
    RunConfig {
        name: Some(name.to_string()),
        plates,
        sweep: Some(SweepSpec {
            kind: GridKind::Log,
            start,
            stop: 1e3,
            points,
        }),
        shared_sigma: true,
        ..RunConfig::default()
    }
}

fn single(name: &str, description: &str, plates: Vec<PlateSpec>) -> Preset {
    Preset {
        name: name.to_string(),
        description: description.to_string(),
        stacks: vec![fixed(name, plates)],
    }
}

/// Magnetic plate at the edge of, or second in, a stack of `n` equal-σ plates.
fn permeable(figure: usize, n: usize, middle: bool) -> Preset {
    let mut plates = vec![Free; n];
    plates[usize::from(middle)] = PM;
    let (place, position) = if middle { ("middle", 2) } else { ("edge", 1) };
    let name = format!("fig{figure}-{place}");
    Preset {
        description: format!("{n} plates, perfect magnetic plate in position {position}, others sharing sigma in [1e-2, 1e3]"),
        stacks: vec![swept(&name, plates, 1e-2, 30)],
        name,
    }
}

pub fn all() -> Vec<Preset> {
    let mut presets = vec![single("graphene-pair", "two graphene sheets", vec![G, G])];
    for n in 2..=6 {
        presets.push(single(
            &format!("graphene-stack-{n}"),
            &format!("{n} equally spaced graphene sheets"),
            vec![G; n],
        ));
    }
    presets.push(single("boyer-pair", "perfect electric and perfect magnetic plate", vec![PE, PM]));
    presets.push(single("pe-graphene", "perfect electric plate and graphene", vec![PE, G]));
    presets.push(single("pm-graphene", "perfect magnetic plate and graphene", vec![PM, G]));
    presets.push(Preset {
        name: "fig2".into(),
        description: "N = 2..6 equal-sigma stacks, sigma in [5e-3, 1e3]".into(),
        stacks: (2..=6).map(|n| swept(&format!("fig2 N={n}"), vec![Free; n], 5e-3, 40)).collect(),
    });
    for (figure, n) in [(3, 3), (4, 4), (5, 5), (6, 6)] {
        presets.push(permeable(figure, n, false));
        presets.push(permeable(figure, n, true));
    }
    let mut ideal = Vec::new();
    for n in 2..=6 {
        ideal.push(fixed(&format!("pe x{n}"), vec![PE; n]));
        let alternating = (0..n).map(|i| if i % 2 == 0 { PE } else { PM }).collect();
        ideal.push(fixed(&format!("alternating x{n}"), alternating));
    }
    ideal.push(fixed("pm pe pe pe", vec![PM, PE, PE, PE]));
    ideal.push(fixed("pe pm pe pe", vec![PE, PM, PE, PE]));
    for c in &mut ideal {
        c.method = MethodChoice::Ideal;
    }
    presets.push(Preset {
        name: "ideal-asymptotes".into(),
        description: "exact energies of perfect electric/magnetic stacks".into(),
        stacks: ideal,
    });
    presets
}

pub fn find(name: &str) -> Option<Preset> {
    all().into_iter().find(|p| p.name == name)
}

pub fn listing() -> String {
    all()
        .iter()
        .map(|p| format!("{:<18} {}\n", p.name, p.description))
        .collect()
}
