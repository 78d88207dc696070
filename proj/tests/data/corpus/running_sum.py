n = 0
numbers = []
while (n < 8):
    temp = int(input("Please Key in a Number: "))
    numbers.append(temp)
    n += 1
sum = 0
for val in numbers:
    sum = sum + val
    print("The sum is ", sum)
