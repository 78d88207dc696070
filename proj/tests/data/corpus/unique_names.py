name1 = []
c = 0
while (c < 4):
    n1 = input("Key in a name: ")
    name1.append(n1)
    c += 1
c = 0
while (c < 4):
    n2 = input("Key in a name: ")
    int1 = False
    for a in name1:
        if(a == n2):
            int1 = True
    if (int1 == False):
        name1.append(n2)
    c += 1
print(name1)
