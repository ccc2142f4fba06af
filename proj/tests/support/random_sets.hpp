#pragma once

#include <gangsched/task.hpp>

#include <random>
#include <vector>

namespace gangsched::testkit {

struct SmallSetShape {
    int max_tasks = 6;
    int max_processors = 4;
    Time max_period = 30;
    bool implicit_deadlines = false;
};

struct SmallInstance {
    TaskSet tasks;
    int processors = 1;
};

// Small random instances for property tests: C in [1, T/2 + 1], D in [C, T]
// (or D = T), volumes in [1, M].
inline SmallInstance random_instance(std::mt19937_64& rng, const SmallSetShape& shape = {}) {
    std::uniform_int_distribution<int> m_dist(1, shape.max_processors);
    std::uniform_int_distribution<int> n_dist(1, shape.max_tasks);
    const int processors = m_dist(rng);
    const int n = n_dist(rng);
    std::uniform_int_distribution<Time> t_dist(2, shape.max_period);
    std::uniform_int_distribution<int> v_dist(1, processors);
    std::vector<GangTask> tasks;
    for (int i = 0; i < n; ++i) {
        const Time period = t_dist(rng);
        std::uniform_int_distribution<Time> c_dist(1, period / 2 + 1);
        const Time wcet = std::min(c_dist(rng), period);
        Time deadline = period;
        if (!shape.implicit_deadlines) {
            std::uniform_int_distribution<Time> d_dist(wcet, period);
            deadline = d_dist(rng);
        }
        tasks.push_back(validate_task(i, wcet, period, deadline, v_dist(rng)));
    }
    return {TaskSet(std::move(tasks)), processors};
}

// A set of n sequential tasks with the given utilization budget spread out
// roughly, used where sets need to be "near feasible".
inline TaskSet random_uniproc_set(std::mt19937_64& rng, int max_tasks, Time max_period,
                                  bool implicit = true) {
    std::uniform_int_distribution<int> n_dist(1, max_tasks);
    std::uniform_int_distribution<Time> t_dist(2, max_period);
    const int n = n_dist(rng);
    std::vector<GangTask> tasks;
    for (int i = 0; i < n; ++i) {
        const Time period = t_dist(rng);
        std::uniform_int_distribution<Time> c_dist(1, std::max<Time>(1, period / n));
        const Time wcet = c_dist(rng);
        Time deadline = period;
        if (!implicit) {
            std::uniform_int_distribution<Time> d_dist(wcet, period);
            deadline = d_dist(rng);
        }
        tasks.push_back(validate_task(i, wcet, period, deadline, 1));
    }
    return TaskSet(std::move(tasks));
}

}  // namespace gangsched::testkit
