"""Slow reference implementations used to cross-check the library.

Everything here works on plain dicts, tuples and explicit breadth-first
search; no packed tables, no numpy beyond reading the input arrays.  The
point is an independent route to the same answers, so keep this module
free of imports from the fast code paths.
"""

import itertools
from collections import deque

from mealy.machine import MealyMachine


def step_state(machine, letter, state):
    """One transition edge, as ints."""
    return int(machine.delta[letter, state])


def step_letter(machine, state, letter):
    return int(machine.rho[state, letter])


def act_on_word(machine, state, word):
    """Image of a letter word under a single state, by the cross rule:
    output the rewritten head, continue from the successor state."""
    out = []
    cur = state
    for a in word:
        out.append(step_letter(machine, cur, a))
        cur = step_state(machine, a, cur)
    return tuple(out)


def act_word_on_word(machine, u, word):
    for x in u:
        word = act_on_word(machine, x, word)
    return tuple(word)


def move_word(machine, letter, u):
    """Image of a state word under a single letter."""
    out = []
    cur = letter
    for x in u:
        out.append(step_state(machine, cur, x))
        cur = step_letter(machine, x, cur)
    return tuple(out)


def all_words(n_letters, length):
    return list(itertools.product(range(n_letters), repeat=length))


def words_up_to(n_letters, length):
    out = []
    for l in range(1, length + 1):
        out.extend(all_words(n_letters, l))
    return out


def action_table(machine, u, depth):
    """The full action of state word u on letter words of length <= depth,
    as a tuple of outputs in the fixed enumeration order."""
    return tuple(act_word_on_word(machine, u, w)
                 for w in words_up_to(machine.n_letters, depth))


def signature_partition(machine, depth):
    """Group the states by their action tables up to the given depth.

    Depth n_states is enough for single states: the refinement chain over a
    set of size n_states stabilizes after at most n_states - 1 proper steps.
    Returns block ids numbered by smallest member.
    """
    sigs = {}
    labels = []
    for x in range(machine.n_states):
        key = action_table(machine, (x,), depth)
        if key not in sigs:
            sigs[key] = len(sigs)
        labels.append(sigs[key])
    return tuple(labels)


def brute_power(machine, n):
    """The n-th power as a MealyMachine built from explicit tuples."""
    words = list(itertools.product(range(machine.n_states), repeat=n))
    index = {w: k for k, w in enumerate(words)}
    n_letters = machine.n_letters
    delta = [[0] * len(words) for _ in range(n_letters)]
    rho = [[0] * n_letters for _ in range(len(words))]
    for w, k in index.items():
        for i in range(n_letters):
            delta[i][k] = index[move_word(machine, i, w)]
            rho[k][i] = act_word_on_word(machine, w, (i,))[0]
    names = tuple("w%d" % k for k in range(len(words)))
    return MealyMachine(names, machine.letters, delta, rho)


def component_sizes(machine):
    """Sizes of weak components of the transition graph, by BFS over an
    explicit adjacency dict; sorted ascending."""
    adj = {x: set() for x in range(machine.n_states)}
    for i in range(machine.n_letters):
        for x in range(machine.n_states):
            y = step_state(machine, i, x)
            adj[x].add(y)
            adj[y].add(x)
    seen = set()
    sizes = []
    for start in range(machine.n_states):
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        count = 0
        while queue:
            x = queue.popleft()
            count += 1
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        sizes.append(count)
    return tuple(sorted(sizes))


def power_component_sizes(machine, n):
    return component_sizes(brute_power(machine, n))


def connection_degree(machine, max_power):
    """First m with a disconnected m-th power gives degree m - 1;
    None when every power up to max_power is connected."""
    for m in range(1, max_power + 1):
        if len(power_component_sizes(machine, m)) > 1:
            return m - 1
    return None


def semigroup_order_at_depth(machine, depth, max_elements=4096):
    """Number of distinct actions on letter words of length <= depth,
    by breadth-first closure over action tables.

    Appending a generator post-composes the whole table with that state's
    action, so a table's successors depend on the table alone and BFS over
    tables is exhaustive.  Tables that agree to this depth are merged, so
    the count is a lower bound on the true order given any one depth; the
    tests call this at two depths and require equal counts before trusting
    the number.  Returns None when the element cap is hit.
    """
    inputs = words_up_to(machine.n_letters, depth)
    identity = tuple(inputs)
    classes = set()
    frontier = [identity]
    while frontier:
        next_frontier = []
        for parent in frontier:
            for x in range(machine.n_states):
                key = tuple(act_on_word(machine, x, out) for out in parent)
                if key not in classes:
                    classes.add(key)
                    next_frontier.append(key)
                    if len(classes) > max_elements:
                        return None
        frontier = next_frontier
    return len(classes)


def semigroup_order(machine, depth=5, max_elements=4096):
    """Order via semigroup_order_at_depth at two consecutive depths; None
    unless both runs finish and agree."""
    a = semigroup_order_at_depth(machine, depth, max_elements)
    b = semigroup_order_at_depth(machine, depth + 1, max_elements)
    if a is None or b is None or a != b:
        return None
    return a
