#include <gangsched/taskset_io.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace gangsched {

using nlohmann::json;

namespace {

Time integer_field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key))
        throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number_integer())
        throw Error(ErrorCode::ParseError, std::string("key '") + key + "' is not an integer");
    return v.get<Time>();
}

}  // namespace

TaskSetFile parse_taskset(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "top level is not an object");
    if (!doc.contains("platform")) throw Error(ErrorCode::ParseError, "missing key 'platform'");
    if (!doc.contains("tasks") || !doc.at("tasks").is_array())
        throw Error(ErrorCode::ParseError, "missing array 'tasks'");

    TaskSetFile file;
    const Time m = integer_field(doc.at("platform"), "processors");
    if (m < 1) throw Error(ErrorCode::NonPositiveField, "platform.processors < 1");
    file.platform.processors = static_cast<int>(m);

    std::vector<GangTask> tasks;
    for (const auto& t : doc.at("tasks")) {
        tasks.push_back(validate_task(static_cast<TaskId>(integer_field(t, "id")),
                                      integer_field(t, "wcet"), integer_field(t, "period"),
                                      integer_field(t, "deadline"),
                                      static_cast<int>(integer_field(t, "volume"))));
    }
    file.tasks = TaskSet(std::move(tasks));
    return file;
}

TaskSetFile read_taskset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_taskset(buf.str());
}

std::string format_taskset(const TaskSetFile& file) {
    json doc;
    doc["platform"] = {{"processors", file.platform.processors}};
    doc["tasks"] = json::array();
    for (const auto& t : file.tasks) {
        doc["tasks"].push_back({{"id", t.id()},
                                {"wcet", t.wcet()},
                                {"period", t.period()},
                                {"deadline", t.deadline()},
                                {"volume", t.volume()}});
    }
    return doc.dump(2) + "\n";
}

void write_taskset(const std::filesystem::path& path, const TaskSetFile& file) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    out << format_taskset(file);
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

std::string format_plan(const PartitionPlan& plan) {
    json doc;
    doc["partitions"] = json::array();
    for (const auto& p : plan.partitions)
        doc["partitions"].push_back({{"volume", p.volume}, {"members", p.members}});
    doc["unassigned"] = plan.unassigned;
    return doc.dump(2) + "\n";
}

}  // namespace gangsched
