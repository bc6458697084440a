#include <vector>
#include <cstdio>

class Edge;

⟦struct Vertex {
    int id;
    std::vector<Edge*> out;
};⟧

⟦class Edge {
public:
    Edge(Vertex* a, Vertex* b) : from(a), to(b) {}
    Vertex* from;
    Vertex* to;
};⟧

int main() {
    Vertex a{1, {}}, b{2, {}};
    Edge e(&a, &b);
    a.out.push_back(&e);
    std::printf("%d -> %d\n", e.from->id, e.to->id);
    return 0;
}
