import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oetree import (
    BadConfig,
    Config,
    EmptyTree,
    Leaf,
    NeedsDepthAnnotation,
    OpenEndedTree,
    WriteOnceViolation,
    new_tree,
)
from oetree.complexity import depth_of_last_tree
from oetree.oracle import FULL_GRID

# Renders after inserting 1..k, transcribed from the worked example terms
# with free variables written as "_".
EXAMPLE_RENDERS = {
    1: "tree(_,1,_)",
    2: "tree(tree(_,2,_),1,_)",
    3: "tree(tree(_,2,_),1,tree(_,3,_))",
    4: "tree(tree(_,2,_),1,tree(tree(_,4,_),3,_))",
    6: "tree(tree(_,2,_),1,tree(tree(tree(_,5,_),4,tree(_,6,_)),3,_))",
    10: "tree(tree(_,2,_),1,tree(tree(tree(_,5,_),4,tree(_,6,_)),3,"
    "tree(tree(tree(tree(_,10,_),9,_),8,_),7,_)))",
}


def filled(n, **kw):
    t = OpenEndedTree(**kw)
    for v in range(1, n + 1):
        t.insert(v)
    return t


@pytest.mark.parametrize("k", sorted(EXAMPLE_RENDERS))
def test_example_renders(k):
    assert filled(k).render() == EXAMPLE_RENDERS[k]


def test_empty_tree():
    t = new_tree(Config(start_depth=1))
    assert t.render() == "_"
    assert t.flatten() == []
    with pytest.raises(EmptyTree):
        t.lookup()


@pytest.mark.parametrize("d0", [0, -3])
def test_bad_start_depth(d0):
    with pytest.raises(BadConfig):
        OpenEndedTree(start_depth=d0)


def test_lookup():
    t = OpenEndedTree()
    t.insert(7)
    assert t.lookup() == 7
    t = filled(10)
    assert t.lookup() == 10
    m = t.mark()
    t.insert(11)
    assert t.lookup() == 11
    t.undo_to(m)
    assert t.lookup() == 10


def test_flatten():
    assert filled(10).flatten() == list(range(1, 11))
    t = OpenEndedTree()
    t.insert("a")
    m = t.mark()
    t.insert("b")
    t.undo_to(m)
    assert t.flatten() == ["a"]


def test_values_are_opaque():
    t = OpenEndedTree()
    payloads = [None, [1, 2], {"k": 3}, (4,), "x"]
    for p in payloads:
        t.insert(p)
        assert t.lookup() is p
    assert t.flatten() == payloads


def test_compact_render():
    assert filled(2, compact_leaves=True).render() == "tree(leaf(2),1,_)"
    assert filled(10, compact_leaves=True).render() == (
        "tree(leaf(2),1,tree(tree(leaf(5),4,leaf(6)),3,tree(tree(tree(leaf(10),9,_),8,_),7,_)))"
    )


def test_annotations_are_not_rendered():
    assert filled(10, depth_annotated=True).render() == EXAMPLE_RENDERS[10]


def test_collector_limits_are_stored_when_annotated():
    t = filled(10, depth_annotated=True, start_depth=2)
    assert [c.limit for _, c, _ in t.collectors()] == [2, 3]
    assert all(c.limit is None for _, c, _ in filled(10).collectors())


def test_validate_accepts_example():
    assert filled(10).validate() is None


def test_validate_completeness():
    v = OpenEndedTree.from_render("tree(_,1,tree(_,2,_))").validate()
    assert v is not None and v.rule == "completeness"


def test_validate_limit():
    v = OpenEndedTree.from_render("tree(tree(tree(_,3,_),2,_),1,_)").validate()
    assert v is not None and v.rule == "limit"
    assert v.path == "LL"


def test_validate_prefix():
    # right child of 4 filled while its left sibling is still empty
    v = OpenEndedTree.from_render("tree(tree(_,2,_),1,tree(tree(_,4,tree(_,5,_)),3,_))").validate()
    assert v is not None and v.rule == "prefix"


def test_validate_compact_rule():
    v = OpenEndedTree.from_render("tree(tree(_,2,_),1,_)", Config(compact_leaves=True)).validate()
    assert v is not None and v.rule == "compact"
    assert OpenEndedTree.from_render("tree(leaf(2),1,_)", Config(compact_leaves=True)).validate() is None
    v = OpenEndedTree.from_render("tree(leaf(2),1,_)").validate()
    assert v is not None and v.rule == "compact"


def test_from_render_round_trip():
    for text in EXAMPLE_RENDERS.values():
        assert OpenEndedTree.from_render(text).render() == text


def test_from_render_rejects_garbage():
    with pytest.raises(ValueError):
        OpenEndedTree.from_render("tree(_,1")


def test_rebase():
    t = filled(10, depth_annotated=True)
    r = t.rebase()
    assert r.render() == "tree(tree(tree(tree(_,10,_),9,_),8,_),7,_)"
    assert r.effective_start == 3
    assert r.lookup() == t.lookup() == 10
    r.insert(11)
    assert t.lookup() == 11
    assert t.flatten() == list(range(1, 12))
    assert t.validate() is None and r.validate() is None


def test_rebase_single_collector():
    t = filled(2, depth_annotated=True)
    assert t.rebase().render() == t.render()


def test_rebase_errors():
    with pytest.raises(NeedsDepthAnnotation):
        filled(3).rebase()
    with pytest.raises(EmptyTree):
        OpenEndedTree(depth_annotated=True).rebase()


def test_rebase_shares_trail():
    t = filled(5, depth_annotated=True)
    r = t.rebase()
    m = r.mark()
    t.insert(6)
    r.insert(7)
    r.undo_to(m)
    assert t.flatten() == [1, 2, 3, 4, 5]


@pytest.mark.parametrize("m,depth", [(10, 6), (100, 12), (1000, 18), (10000, 26)])
def test_stats_depth(m, depth):
    s = filled(m).stats()
    assert s.max_node_depth == depth
    assert s.update_count == s.node_count == m


def test_stats_empty():
    s = OpenEndedTree().stats()
    assert (s.update_count, s.collector_count, s.max_node_depth, s.node_count, s.leaf_count) == (0,) * 5


def test_stats_counts_example():
    s = filled(10).stats()
    # collectors 1, 3, 7; leaves are the nodes at maximal depth: 2, 5, 6, 10
    assert s.collector_count == 3
    assert s.leaf_count == 4
    assert filled(10, compact_leaves=True).stats() == s


def test_visits_insert_on_empty():
    t = OpenEndedTree()
    t.insert(1)
    assert t.visits().last_visits == 1


def test_visits_lookup_bounds():
    t = filled(10000)
    t.lookup()
    assert t.visits().last_lookup <= 26
    t = filled(1000, start_depth=10)
    t.lookup()
    assert t.visits().last_lookup <= 11


def test_visit_counter_accumulates():
    t = filled(3)
    before = t.visits().nodes_visited
    t.lookup()
    after = t.visits()
    assert after.nodes_visited == before + after.last_lookup


def test_slots_are_write_once():
    t = filled(3)
    root = t.root
    with pytest.raises(WriteOnceViolation):
        t.trail.bind(root, root.node)


# -- properties over random operation sequences -----------------------------

configs = st.sampled_from(FULL_GRID)
op_lists = st.lists(
    st.one_of(
        st.tuples(st.just("insert"), st.integers(0, 10**6)),
        st.tuples(st.just("mark"), st.just(0)),
        st.tuples(st.just("undo"), st.integers(0, 10**6)),
    ),
    max_size=150,
)


def replay(config, ops, check):
    """Apply ops to a tree and a plain log, calling ``check`` after each step."""
    t = OpenEndedTree(config=config)
    log = []
    marks = []
    for op, arg in ops:
        if op == "insert":
            t.insert(arg)
            log.append(arg)
        elif op == "mark":
            marks.append((t.mark(), len(log), t.render()))
        elif marks:
            i = arg % len(marks)
            m, n, snapshot = marks[i]
            t.undo_to(m)
            del log[n:]
            del marks[i + 1:]
            assert t.render() == snapshot
        check(t, log, op)
    return t, log


@settings(max_examples=150, deadline=None)
@given(configs, op_lists)
def test_history_validity_and_round_trip(config, ops):
    def check(t, log, op):
        assert t.flatten() == log
        assert t.validate() is None
        if log:
            assert t.lookup() == log[-1]
            if op == "insert":
                assert t.visits().last_insert <= 2 * depth_of_last_tree(len(log), t.effective_start) + 1
            assert t.visits().last_lookup <= 2 * depth_of_last_tree(len(log), t.effective_start)

    replay(config, ops, check)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10), op_lists)
def test_variant_equivalence(d0, ops):
    variants = [c for c in FULL_GRID if c.start_depth == d0] or [
        Config(d0, a, c) for a in (False, True) for c in (False, True)
    ]
    results = [replay(c, ops, lambda *a: None)[0] for c in variants]
    flat = {tuple(t.flatten()) for t in results}
    assert len(flat) == 1
    plain = results[0].render()
    for t in results:
        normalized = t.render()
        if t.config.compact_leaves:
            for v in t.flatten():
                normalized = normalized.replace(f"leaf({v})", f"tree(_,{v},_)")
        assert normalized == plain


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([1, 2, 3, 10]), st.integers(1, 200), st.lists(st.integers(), max_size=100))
def test_rebase_invariance(d0, n, extra):
    base = filled(n, start_depth=d0, depth_annotated=True)
    twin = filled(n, start_depth=d0, depth_annotated=True)
    r = base.rebase()
    assert r.lookup() == base.lookup()
    for v in extra:
        r.insert(v)
        twin.insert(v)
        assert r.lookup() == base.lookup() == v
        assert r.validate() is None
    assert base.flatten() == twin.flatten()
    assert base.render() == twin.render()
    assert base.validate() is None


def test_rebased_insert_visits_fewer_nodes():
    t = filled(10000, depth_annotated=True)
    r = t.rebase()
    m = t.mark()
    t.insert(0)
    full = t.visits().last_insert
    t.undo_to(m)
    r.insert(0)
    assert r.visits().last_insert < full


def test_leaf_type_only_in_compact_mode():
    t = filled(50, compact_leaves=True)
    kinds = {type(n) for n in t._store.arena}
    assert Leaf in kinds
    t = filled(50)
    assert {type(n) for n in t._store.arena} == {type(t.root.node)}
