use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{random_action, Policy};
use crate::grid_game::{state_value, Action, ForwardModel, GameState};
use crate::seed::Rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RheaParams {
    pub population: usize,
    pub length: usize,
    pub mutation_rate: f64,
    pub elitism: usize,
    pub tournament: usize,
}

impl Default for RheaParams {
    fn default() -> Self {
        Self {
            population: 10,
            length: 10,
            mutation_rate: 0.2,
            elitism: 1,
            tournament: 2,
        }
    }
}

/// Rolling horizon evolution: evolves fixed-length action sequences scored
/// by the value of the state they lead to, generation after generation until
/// the budget is spent.
#[derive(Clone, Debug, Default)]
pub struct Rhea(pub RheaParams);

#[derive(Clone)]
struct Individual {
    genes: Vec<Action>,
    fitness: f64,
}

impl Rhea {
    /// `None` if the budget ran out mid-sequence.
    fn evaluate(&self, state: &GameState, genes: &[Action], model: &mut ForwardModel, rng: &mut Rng) -> Option<f64> {
        let mut sim = state.clone();
        for &a in genes {
            if sim.is_terminal() {
                break;
            }
            if !model.advance(&mut sim, a, rng) {
                return None;
            }
        }
        Some(state_value(&sim))
    }

    fn tournament<'a>(&self, pop: &'a [Individual], rng: &mut Rng) -> &'a Individual {
        let mut best = &pop[rng.random_range(0..pop.len())];
        for _ in 1..self.0.tournament.max(1) {
            let other = &pop[rng.random_range(0..pop.len())];
            if other.fitness > best.fitness {
                best = other;
            }
        }
        best
    }
}

impl Policy for Rhea {
    fn name(&self) -> &str {
        "RHEA"
    }

    fn act(&self, state: &GameState, model: &mut ForwardModel, rng: &mut Rng) -> Action {
        let p = &self.0;
        let len = p.length.max(1);
        let mut pop: Vec<Individual> = Vec::with_capacity(p.population);
        for _ in 0..p.population.max(1) {
            let genes: Vec<Action> = (0..len).map(|_| random_action(rng)).collect();
            match self.evaluate(state, &genes, model, rng) {
                Some(fitness) => pop.push(Individual { genes, fitness }),
                None => break,
            }
        }

        'evolve: while !pop.is_empty() && !model.exhausted() {
            pop.sort_by(|a, b| b.fitness.total_cmp(&a.fitness));
            let mut next: Vec<Individual> = pop.iter().take(p.elitism).cloned().collect();
            while next.len() < p.population.max(1) {
                let a = self.tournament(&pop, rng);
                let b = self.tournament(&pop, rng);
                let cut = rng.random_range(0..=len);
                let mut genes: Vec<Action> = a.genes[..cut].iter().chain(&b.genes[cut..]).copied().collect();
                for g in genes.iter_mut() {
                    if rng.random_bool(p.mutation_rate.clamp(0.0, 1.0)) {
                        *g = random_action(rng);
                    }
                }
                match self.evaluate(state, &genes, model, rng) {
                    Some(fitness) => next.push(Individual { genes, fitness }),
                    None => {
                        pop.extend(next);
                        break 'evolve;
                    }
                }
            }
            pop = next;
        }

        pop.iter()
            .max_by(|a, b| a.fitness.total_cmp(&b.fitness))
            .map(|i| i.genes[0])
            .unwrap_or_else(|| random_action(rng))
    }
}
